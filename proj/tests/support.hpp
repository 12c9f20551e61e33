#pragma once

// Test-side oracles. Nothing here calls into the code under test except for types.

#include "scarf/instance.hpp"
#include "scarf/ordinal.hpp"
#include "scarf/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace scarf::testing {

using Mat = std::vector<std::vector<Rational>>;

/// All k-subsets of [0, cols), lexicographic.
template <class F>
void for_each_subset(int cols, int k, F &&f) {
  std::vector<int> s(k);
  std::iota(s.begin(), s.end(), 0);
  if (k > cols) return;
  while (true) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[i] == cols - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

/// Random (A', b) with small nonnegative integers; every column of A' is nonzero
/// so the region stays bounded.
inline StandardFormSystem random_system(std::mt19937_64 &rng, int n, int m, int max_entry = 3) {
  std::uniform_int_distribution<int> e(0, max_entry), bd(1, 6), row(0, n - 1);
  Mat a(n, std::vector<Rational>(m));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) a[i][j] = e(rng);
    if (std::all_of(a.begin(), a.end(), [j](const auto &r) { return r[j] == 0; })) a[row(rng)][j] = 1;
  }
  std::vector<Rational> b(n);
  for (auto &x : b) x = bd(rng);
  return StandardFormSystem(a, b);
}

/// Leibniz determinant; fine up to n = 7.
inline Rational leibniz_det(const Mat &m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational det = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    Rational term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n && term != 0; ++i) term *= m[i][p[i]];
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

/// Cramer's rule solve of A_B y = b; nullopt when singular.
inline std::optional<std::vector<Rational>> cramer(const StandardFormSystem &sys, const std::vector<int> &cols) {
  const int n = sys.n();
  Mat ab(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) ab[i][c] = sys.a(i, cols[c]);
  const Rational det = leibniz_det(ab);
  if (det == 0) return std::nullopt;
  std::vector<Rational> y(n);
  for (int c = 0; c < n; ++c) {
    Mat t = ab;
    for (int i = 0; i < n; ++i) t[i][c] = sys.b()[i];
    y[c] = leibniz_det(t) / det;
  }
  return y;
}

/// True when every nonsingular basis has a basic solution without zeros; checked
/// over all column subsets.
inline bool nondegenerate(const StandardFormSystem &sys) {
  bool ok = true;
  for_each_subset(sys.cols(), sys.n(), [&](const std::vector<int> &cols) {
    if (!ok) return;
    const auto y = cramer(sys, cols);
    if (y && std::any_of(y->begin(), y->end(), [](const Rational &v) { return v == 0; })) ok = false;
  });
  return ok;
}

/// Random system with b drawn from a wide range, redrawn until nondegenerate.
inline StandardFormSystem random_nondegenerate_system(std::mt19937_64 &rng, int n, int m) {
  std::uniform_int_distribution<int> e(0, 3), bd(1, 997), row(0, n - 1);
  while (true) {
    Mat a(n, std::vector<Rational>(m));
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) a[i][j] = e(rng);
      if (std::all_of(a.begin(), a.end(), [j](const auto &r) { return r[j] == 0; })) a[row(rng)][j] = 1;
    }
    std::vector<Rational> b(n);
    for (auto &x : b) x = Rational(bd(rng), 7);
    StandardFormSystem sys(a, b);
    if (nondegenerate(sys)) return sys;
  }
}

/// Ordinal matrix from random row orders respecting the diagonal/slack structure.
inline OrdinalMatrix random_ordinal_matrix(std::mt19937_64 &rng, int n, int m) {
  OrdinalMatrix c(n, m);
  for (int i = 0; i < n; ++i) {
    std::vector<int> ns(m);
    std::iota(ns.begin(), ns.end(), n);
    std::shuffle(ns.begin(), ns.end(), rng);
    std::vector<int> sl;
    for (int j = 0; j < n; ++j)
      if (j != i) sl.push_back(j);
    std::shuffle(sl.begin(), sl.end(), rng);
    std::int64_t v = 0;
    c.set(i, i, v++);
    for (int j : ns) c.set(i, j, v++);
    for (int j : sl) c.set(i, j, v++);
  }
  return c;
}

/// Scans all perfect matchings and the blocking condition pair by pair.
inline bool stable_by_scan(const MarriageInstance &inst, const std::vector<int> &wife) {
  const int k = inst.k;
  std::vector<int> husband(k, -1);
  for (int m = 0; m < k; ++m) {
    if (wife[m] < 0) return false;
    husband[wife[m]] = m;
  }
  for (int m = 0; m < k; ++m)
    for (int w = 0; w < k; ++w) {
      const auto &lm = inst.men[m];
      const auto &lw = inst.women[w];
      const auto pos = [](const std::vector<int> &l, int x) { return std::find(l.begin(), l.end(), x) - l.begin(); };
      if (pos(lm, w) < pos(lm, wife[m]) && pos(lw, m) < pos(lw, husband[w])) return false;
    }
  return true;
}

} // namespace scarf::testing
