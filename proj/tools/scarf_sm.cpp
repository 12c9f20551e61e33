// scarf-sm: command-line front end.
//
// Exit codes: 0 success, 1 negative verdict, 2 usage or input error, 3 internal
// failure (invariant violation or iteration cap).

#include "scarf/io.hpp"
#include "scarf/marriage.hpp"
#include "scarf/oracle.hpp"
#include "scarf/perturb.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace scarf;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, internal = 3 };

// Input errors, reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string &path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

MarriageInstance load_instance(const std::string &path) {
  try {
    return parse_instance(read_input(path));
  } catch (const ParseError &e) {
    throw UsageError((path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

long max_iterations() {
  const char *env = std::getenv("SCARF_SM_MAX_ITER");
  if (!env || !*env) return 0;
  char *end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end || v <= 0) throw UsageError("SCARF_SM_MAX_ITER must be a positive integer");
  return v;
}

std::string agents(const std::vector<int> &nodes, int k) {
  std::string s;
  for (int v : nodes) s += (s.empty() ? "" : ",") + (v < k ? "m" + std::to_string(v + 1) : "w" + std::to_string(v - k + 1));
  return s;
}

std::string one_line(const Matching &mu) {
  std::string s;
  for (auto [m, w] : mu.pairs()) s += (s.empty() ? "" : " ") + std::to_string(m + 1) + "-" + std::to_string(w + 1);
  return s;
}

int cmd_solve(const std::string &path, const std::string &trace_path, bool check) {
  const auto inst = load_instance(path);
  SolveOptions opts;
  opts.check_invariants = check;
  opts.max_iterations = max_iterations();
  try {
    const auto res = solve(inst, opts);
    if (!trace_path.empty()) write_file(trace_path, serialize_trace(res.trace));
    std::cout << "# iterations: " << res.iterations() << '\n' << format_matching(res.matching);
    return ok;
  } catch (const SolveFailure &e) {
    if (!trace_path.empty()) write_file(trace_path, serialize_trace(e.trace));
    std::cerr << "solve failed after " << e.trace.iterations.size() << " iterations: " << e.what() << '\n';
    return internal;
  }
}

int cmd_trace(const std::string &path, const std::string &format) {
  const auto inst = load_instance(path);
  SolveOptions opts;
  opts.max_iterations = max_iterations();
  try {
    const auto res = solve(inst, opts);
    std::cout << serialize_trace(res.trace, format == "csv" ? TraceFormat::csv_summary : TraceFormat::json);
    return ok;
  } catch (const SolveFailure &e) {
    std::cerr << "solve failed after " << e.trace.iterations.size() << " iterations: " << e.what() << '\n';
    return internal;
  }
}

int cmd_verify(const std::string &inst_path, const std::string &matching_path) {
  if (inst_path == "-" && matching_path == "-") throw UsageError("only one argument can read stdin");
  const auto inst = load_instance(inst_path);
  Matching mu;
  try {
    mu = parse_matching(read_input(matching_path), inst.k);
  } catch (const ParseError &e) {
    throw UsageError(matching_path + ": " + e.what());
  } catch (const MalformedMatching &e) {
    throw UsageError(matching_path + ": " + e.what());
  }
  if (const auto bp = blocking_pair(inst, mu)) {
    std::cout << "unstable: blocking pair " << bp->first + 1 << ' ' << bp->second + 1 << '\n';
    return negative;
  }
  std::cout << "stable\n";
  return ok;
}

int cmd_enumerate(const std::string &path, const std::string &method, bool tags) {
  const auto inst = load_instance(path);
  std::vector<Matching> all;
  try {
    all = enumerate_stable(inst, method == "brute" ? EnumerationMethod::brute_force : EnumerationMethod::rotations);
  } catch (const TooLarge &e) {
    throw UsageError(e.what());
  }
  std::cout << "# stable matchings: " << all.size() << '\n';
  for (const auto &mu : all) {
    std::cout << one_line(mu);
    if (tags) {
      const auto c = classify(inst, mu, all);
      std::cout << (c.intermediate() ? "  intermediate" : "  optimal " + agents(c.optimal_for, inst.k));
    }
    std::cout << '\n';
  }
  return ok;
}

int cmd_generate(const std::string &family, int k, std::uint64_t seed, const std::string &name) {
  if (!name.empty() && !family.empty()) throw UsageError("--fixture and --family are exclusive");
  if (!name.empty()) {
    const auto &names = fixture_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown fixture " + name);
    std::cout << format_instance(fixture(name));
    return ok;
  }
  if (family.empty()) throw UsageError("need --family or --fixture");
  if (k <= 0) throw UsageError("--k must be positive");
  if (family == "irving-leather") {
    if (k % 2) throw UsageError("irving-leather needs an even --k");
    std::cout << format_instance(irving_leather(k));
  } else {
    std::cout << format_instance(random_instance(k, seed));
  }
  return ok;
}

int cmd_perturb_compare(const std::string &path) {
  const auto inst = load_instance(path);
  const auto rep = compare_sequences(inst);
  std::cout << "conforming: " << (rep.conforming ? "yes" : "no") << '\n';
  if (!rep.conforming)
    std::cout << "first nonconforming iteration: " << rep.first_nonconforming + 1 << " (" << rep.reason << ")\n";
  std::cout << "unperturbed iterations: " << rep.unperturbed_iterations << '\n'
            << "perturbed iterations: " << rep.perturbed_iterations << '\n';
  if (rep.sequences_equal) std::cout << "sequences: identical\n";
  else std::cout << "sequences: diverge at iteration " << rep.first_divergence + 1 << '\n';
  std::cout << "same matching: " << (rep.unperturbed == rep.perturbed ? "yes" : "no") << '\n';
  return rep.conforming ? ok : negative;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Scarf's algorithm on stable marriage instances"};
  app.require_subcommand(1);

  std::string instance, matching, trace_path, format = "json", method = "rotations", family, name;
  bool check = false, tags = false;
  int k = 0;
  std::uint64_t seed = 0;

  auto *solve_cmd = app.add_subcommand("solve", "Run the marriage pivoting rule and print the matching");
  solve_cmd->add_option("instance", instance, "Instance file, - for stdin")->required();
  solve_cmd->add_option("--trace", trace_path, "Write the JSON trace here");
  solve_cmd->add_flag("--assert-invariants", check, "Check the per-iteration invariants");

  auto *trace_cmd = app.add_subcommand("trace", "Print the pivot trace");
  trace_cmd->add_option("instance", instance, "Instance file, - for stdin")->required();
  trace_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto *verify_cmd = app.add_subcommand("verify", "Check a matching for blocking pairs");
  verify_cmd->add_option("instance", instance, "Instance file, - for stdin")->required();
  verify_cmd->add_option("matching", matching, "Matching file, one 'man woman' pair per line")->required();

  auto *enum_cmd = app.add_subcommand("enumerate", "List all stable matchings");
  enum_cmd->add_option("instance", instance, "Instance file, - for stdin")->required();
  enum_cmd->add_option("--method", method, "rotations or brute")->check(CLI::IsMember({"rotations", "brute"}));
  enum_cmd->add_flag("--classify", tags, "Tag each matching as intermediate or optimal for some agents");

  auto *gen_cmd = app.add_subcommand("generate", "Print an instance");
  gen_cmd->add_option("--family", family, "irving-leather or random")
      ->check(CLI::IsMember({"irving-leather", "random"}));
  gen_cmd->add_option("--k", k, "Agents per side");
  gen_cmd->add_option("--seed", seed, "Seed for the random family");
  gen_cmd->add_option("--fixture", name, "example_5_1, example_8_3 or table_8_2");

  auto *cmp_cmd = app.add_subcommand("perturb-compare", "Compare the perturbed and unperturbed runs");
  cmp_cmd->add_option("instance", instance, "Instance file, - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*solve_cmd) return cmd_solve(instance, trace_path, check);
    if (*trace_cmd) return cmd_trace(instance, format);
    if (*verify_cmd) return cmd_verify(instance, matching);
    if (*enum_cmd) return cmd_enumerate(instance, method, tags);
    if (*gen_cmd) return cmd_generate(family, k, seed, name);
    if (*cmp_cmd) return cmd_perturb_compare(instance);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const InternalError &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  } catch (const Error &e) {
    // Remaining library errors come from bad input (duplicate list entries, k).
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
