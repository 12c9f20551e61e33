// Solves a random instance and prints the matching, 1-based.
#include "scarf/io.hpp"
#include "scarf/marriage.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char **argv) {
  const int k = argc > 1 ? std::atoi(argv[1]) : 6;
  const auto inst = scarf::random_instance(k, argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1);
  std::cout << scarf::format_instance(inst);
  const auto res = scarf::solve(inst);
  std::cout << "# iterations: " << res.iterations() << '\n' << scarf::format_matching(res.matching);
}
