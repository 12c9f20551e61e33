#pragma once

#include "scarf/instance.hpp"
#include "scarf/ordinal.hpp"
#include "scarf/polytope.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace scarf {

enum class Side { men, women };

/// Deferred acceptance; men proposing gives the man-optimal matching.
inline Matching gale_shapley(const MarriageInstance &inst, Side proposing) {
  const int k = inst.k;
  const bool men = proposing == Side::men;
  const auto &prop = men ? inst.men : inst.women;
  auto accepts = [&](int r, int newcomer, int holder) {
    return men ? inst.woman_prefers(r, newcomer, holder) : inst.man_prefers(r, newcomer, holder);
  };
  std::vector<int> next(k, 0), held(k, -1), partner(k, -1);
  std::deque<int> free;
  for (int p = 0; p < k; ++p) free.push_back(p);
  while (!free.empty()) {
    const int p = free.front();
    free.pop_front();
    if (next[p] == k) continue;
    const int r = prop[p][next[p]++];
    if (held[r] < 0) {
      held[r] = p, partner[p] = r;
    } else if (accepts(r, p, held[r])) {
      partner[held[r]] = -1;
      free.push_back(held[r]);
      held[r] = p, partner[p] = r;
    } else {
      free.push_back(p);
    }
  }
  Matching mu(k);
  for (int p = 0; p < k; ++p) {
    if (partner[p] < 0) continue;
    if (men) mu.wife[p] = partner[p], mu.husband[partner[p]] = p;
    else mu.husband[p] = partner[p], mu.wife[partner[p]] = p;
  }
  return mu;
}

/// Cyclic sequence (m_0, w_0), (m_1, w_1), ... with w_i = mu(m_i). Eliminating it
/// moves every m_i to w_{i+1}.
struct Rotation {
  std::vector<std::pair<int, int>> pairs;
  auto operator<=>(const Rotation &) const = default;
};

/// Rotations exposed at a stable matching; they are the cycles of
/// m -> mu(s(m)), where s(m) is the first woman after mu(m) on m's list who
/// prefers m to her partner. Sorted, each starting at its smallest man.
inline std::vector<Rotation> exposed_rotations(const MarriageInstance &inst, const Matching &mu) {
  if (!is_stable(inst, mu)) throw NotStable();
  const int k = inst.k;
  std::vector<int> next(k, -1);
  for (int m = 0; m < k; ++m) {
    if (mu.wife[m] < 0) continue;
    for (int r = inst.man_rank[m][mu.wife[m]] + 1; r < k; ++r) {
      const int w = inst.men[m][r];
      if (mu.husband[w] >= 0 && inst.woman_prefers(w, m, mu.husband[w])) {
        next[m] = mu.husband[w];
        break;
      }
    }
  }
  std::vector<Rotation> out;
  std::vector<int> state(k, 0); // 0 new, 1 on current walk, 2 done
  for (int s = 0; s < k; ++s) {
    std::vector<int> walk;
    int m = s;
    while (m >= 0 && state[m] == 0) {
      state[m] = 1;
      walk.push_back(m);
      m = next[m];
    }
    if (m >= 0 && state[m] == 1) {
      auto it = std::find(walk.begin(), walk.end(), m);
      std::vector<int> cyc(it, walk.end());
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      Rotation rho;
      for (int x : cyc) rho.pairs.emplace_back(x, mu.wife[x]);
      out.push_back(std::move(rho));
    }
    for (int x : walk) state[x] = 2;
  }
  std::vector<char> used(2 * k, 0);
  for (const auto &rho : out)
    for (auto [m, w] : rho.pairs) {
      if (used[m]++ || used[k + w]++) throw InternalError("exposed rotations share an agent");
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Matching eliminate(const Matching &mu, const Rotation &rho) {
  Matching out = mu;
  const auto &p = rho.pairs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int m = p[i].first, w = p[(i + 1) % p.size()].second;
    out.wife[m] = w;
    out.husband[w] = m;
  }
  return out;
}

enum class EnumerationMethod { brute_force, rotations };

inline constexpr int brute_force_max_k = 7;
inline constexpr std::size_t rotation_max_matchings = std::size_t{1} << 20;

/// All stable matchings, sorted.
inline std::vector<Matching> enumerate_stable(const MarriageInstance &inst,
                                              EnumerationMethod method = EnumerationMethod::rotations) {
  const int k = inst.k;
  if (method == EnumerationMethod::brute_force) {
    if (k > brute_force_max_k) throw TooLarge("brute force enumeration is capped at k = 7");
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Matching> out;
    do {
      Matching mu(k);
      for (int m = 0; m < k; ++m) mu.wife[m] = perm[m], mu.husband[perm[m]] = m;
      if (is_stable(inst, mu)) out.push_back(mu);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::set<Matching> seen{gale_shapley(inst, Side::men)};
  std::vector<Matching> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    const Matching mu = std::move(todo.back());
    todo.pop_back();
    for (const auto &rho : exposed_rotations(inst, mu)) {
      Matching next = eliminate(mu, rho);
      if (seen.insert(next).second) {
        if (seen.size() > rotation_max_matchings) throw TooLarge("more than 2^20 stable matchings");
        todo.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

/// Agents (node indices: men 0..k-1, women k..2k-1) whose best stable partner mu
/// gives; empty means mu is intermediate.
struct Classification {
  std::vector<int> optimal_for;
  bool intermediate() const { return optimal_for.empty(); }
};

inline Classification classify(const MarriageInstance &inst, const Matching &mu,
                               const std::vector<Matching> &all) {
  const int k = inst.k;
  if (std::find(all.begin(), all.end(), mu) == all.end()) throw NotStable();
  Classification c;
  for (int m = 0; m < k; ++m) {
    bool best = true;
    for (const auto &nu : all) best = best && !inst.man_prefers(m, nu.wife[m], mu.wife[m]);
    if (best) c.optimal_for.push_back(m);
  }
  for (int w = 0; w < k; ++w) {
    bool best = true;
    for (const auto &nu : all) best = best && !inst.woman_prefers(w, nu.husband[w], mu.husband[w]);
    if (best) c.optimal_for.push_back(k + w);
  }
  return c;
}

inline Classification classify(const MarriageInstance &inst, const Matching &mu,
                               EnumerationMethod method = EnumerationMethod::rotations) {
  return classify(inst, mu, enumerate_stable(inst, method));
}

/// Feasible for (A, b) and an ordinal basis of C, by direct scans.
inline bool check_dominating(const StandardFormSystem &sys, const OrdinalMatrix &c,
                             const std::vector<int> &cols) {
  const int n = sys.n();
  if (static_cast<int>(cols.size()) != n || c.n() != n || c.cols() != sys.cols()) return false;
  std::vector<char> in(c.cols(), 0);
  for (int j : cols) {
    if (j < 0 || j >= c.cols() || in[j]) return false;
    in[j] = 1;
  }
  if (basis_status(sys, cols) != BasisStatus::feasible) return false;
  std::vector<std::int64_t> u(n);
  for (int i = 0; i < n; ++i) {
    u[i] = c(i, cols[0]);
    for (int j : cols) u[i] = std::min(u[i], c(i, j));
  }
  // Members too: a member that is no row's minimum is undominated.
  for (int h = 0; h < c.cols(); ++h) {
    bool dominated = false;
    for (int i = 0; i < n; ++i) dominated = dominated || c(i, h) <= u[i];
    if (!dominated) return false;
  }
  return true;
}

struct ConsistencyVerdict {
  bool consistent = true;
  std::string witness;
};

/// (i) an endpoint ranks a column below every non-endpoint does; (ii) within a row,
/// incident columns follow the node's preferences, with its own loop last.
/// Columns use the marriage layout (loops first, then each man's block).
inline ConsistencyVerdict check_consistency(const MarriageInstance &inst, const OrdinalMatrix &c) {
  const int k = inst.k, n = 2 * k;
  if (c.n() != n || c.m() != k * k) return {false, "dimensions differ from the instance"};
  auto ends = [&](int j) -> std::pair<int, int> {
    if (j < n) return {j, j};
    const int m = (j - n) / k;
    return {m, k + inst.men[m][(j - n) % k]};
  };
  for (int j = 0; j < c.cols(); ++j) {
    const auto [a, b] = ends(j);
    const std::int64_t worst_end = std::max(c(a, j), c(b, j));
    for (int i = 0; i < n; ++i)
      if (i != a && i != b && c(i, j) <= worst_end)
        return {false, "row " + std::to_string(i + 1) + " ranks column " + std::to_string(j + 1) +
                           " no higher than an endpoint"};
  }
  for (int v = 0; v < n; ++v) {
    // Incident columns from best to worst partner, then the own loop.
    std::vector<int> order;
    for (int r = 0; r < k; ++r) {
      if (v < k) order.push_back(n + v * k + r);
      else {
        const int m = inst.women[v - k][r];
        order.push_back(n + m * k + inst.man_rank[m][v - k]);
      }
    }
    order.push_back(v);
    for (std::size_t t = 1; t < order.size(); ++t)
      if (!(c(v, order[t - 1]) > c(v, order[t])))
        return {false, "row " + std::to_string(v + 1) + " misorders columns " +
                           std::to_string(order[t - 1] + 1) + " and " + std::to_string(order[t] + 1)};
  }
  return {};
}

} // namespace scarf
