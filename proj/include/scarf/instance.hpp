#pragma once

#include "scarf/errors.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scarf {

/// k men and k women with complete strict preference lists (0-based, best first).
/// Nodes: man i is node i, woman j is node k + j.
struct MarriageInstance {
  int k = 0;
  std::vector<std::vector<int>> men;
  std::vector<std::vector<int>> women;
  // Lengths of the lists as given; entries past them were appended by completion.
  std::vector<int> men_given;
  std::vector<int> women_given;
  std::vector<std::vector<int>> man_rank;   // [m][w] position of w in m's list
  std::vector<std::vector<int>> woman_rank; // [w][m]

  /// Validates and completes partial lists by appending missing partners in index order.
  static MarriageInstance make(int k, std::vector<std::vector<int>> men,
                               std::vector<std::vector<int>> women) {
    if (k <= 0) throw InvalidArgument("k must be positive");
    if (static_cast<int>(men.size()) != k || static_cast<int>(women.size()) != k)
      throw InvalidArgument("need k lists per side");
    MarriageInstance inst;
    inst.k = k;
    auto complete = [k](std::vector<std::vector<int>> &lists, std::vector<int> &given,
                        const char *side) {
      for (int a = 0; a < k; ++a) {
        auto &l = lists[a];
        given.push_back(static_cast<int>(l.size()));
        std::vector<char> seen(k, 0);
        for (int x : l) {
          if (x < 0 || x >= k) throw InvalidArgument(std::string(side) + " list entry out of range");
          if (seen[x]++) throw InvalidPermutation(std::string(side) + " " + std::to_string(a + 1), x);
        }
        for (int x = 0; x < k; ++x)
          if (!seen[x]) l.push_back(x);
      }
    };
    complete(men, inst.men_given, "man");
    complete(women, inst.women_given, "woman");
    inst.men = std::move(men);
    inst.women = std::move(women);
    inst.man_rank.assign(k, std::vector<int>(k));
    inst.woman_rank.assign(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
      for (int r = 0; r < k; ++r) {
        inst.man_rank[a][inst.men[a][r]] = r;
        inst.woman_rank[a][inst.women[a][r]] = r;
      }
    return inst;
  }

  int n() const { return 2 * k; }
  int m() const { return k * k; }
  bool completed() const {
    for (int a = 0; a < k; ++a)
      if (men_given[a] < k || women_given[a] < k) return true;
    return false;
  }
  bool man_prefers(int m, int w1, int w2) const { return man_rank[m][w1] < man_rank[m][w2]; }
  bool woman_prefers(int w, int m1, int m2) const { return woman_rank[w][m1] < woman_rank[w][m2]; }

  bool operator==(const MarriageInstance &o) const {
    return k == o.k && men == o.men && women == o.women;
  }
};

/// wife[m] / husband[w], -1 when single.
struct Matching {
  std::vector<int> wife;
  std::vector<int> husband;

  Matching() = default;
  explicit Matching(int k) : wife(k, -1), husband(k, -1) {}

  static Matching from_pairs(int k, const std::vector<std::pair<int, int>> &pairs) {
    Matching mu(k);
    for (auto [m, w] : pairs) {
      if (m < 0 || m >= k || w < 0 || w >= k) throw MalformedMatching("pair out of range");
      if (mu.wife[m] >= 0 || mu.husband[w] >= 0) throw MalformedMatching("agent matched twice");
      mu.wife[m] = w;
      mu.husband[w] = m;
    }
    return mu;
  }

  int k() const { return static_cast<int>(wife.size()); }
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> p;
    for (int m = 0; m < k(); ++m)
      if (wife[m] >= 0) p.emplace_back(m, wife[m]);
    return p;
  }

  auto operator<=>(const Matching &) const = default;
};

inline void check_matching(const MarriageInstance &inst, const Matching &mu) {
  if (mu.k() != inst.k || static_cast<int>(mu.husband.size()) != inst.k)
    throw MalformedMatching("matching size differs from instance");
  for (int m = 0; m < inst.k; ++m) {
    const int w = mu.wife[m];
    if (w < -1 || w >= inst.k) throw MalformedMatching("partner out of range");
    if (w >= 0 && mu.husband[w] != m) throw MalformedMatching("partner maps disagree");
  }
  for (int w = 0; w < inst.k; ++w) {
    const int m = mu.husband[w];
    if (m < -1 || m >= inst.k) throw MalformedMatching("partner out of range");
    if (m >= 0 && mu.wife[m] != w) throw MalformedMatching("partner maps disagree");
  }
}

/// Lexicographically first blocking pair (man, woman), if any. Single agents prefer
/// any partner (lists are complete).
inline std::optional<std::pair<int, int>> blocking_pair(const MarriageInstance &inst,
                                                        const Matching &mu) {
  check_matching(inst, mu);
  for (int m = 0; m < inst.k; ++m)
    for (int w = 0; w < inst.k; ++w) {
      if (mu.wife[m] == w) continue;
      const bool m_wants = mu.wife[m] < 0 || inst.man_prefers(m, w, mu.wife[m]);
      const bool w_wants = mu.husband[w] < 0 || inst.woman_prefers(w, m, mu.husband[w]);
      if (m_wants && w_wants) return std::make_pair(m, w);
    }
  return std::nullopt;
}

inline bool is_stable(const MarriageInstance &inst, const Matching &mu) {
  return !blocking_pair(inst, mu);
}

} // namespace scarf
