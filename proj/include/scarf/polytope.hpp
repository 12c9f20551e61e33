#pragma once

#include "scarf/errors.hpp"
#include "scarf/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace scarf {

/// The system Ax = b, x >= 0 with A = (I | A') nonnegative and b > 0.
/// Boundedness of {x >= 0 : Ax = b} is a precondition, not checked.
class StandardFormSystem {
public:
  StandardFormSystem() = default;

  /// Builds (I | A') from the n x m block A' and the right-hand side b.
  StandardFormSystem(const std::vector<std::vector<Rational>> &a_prime, std::vector<Rational> b)
      : n_(static_cast<int>(b.size())), m_(a_prime.empty() ? 0 : static_cast<int>(a_prime[0].size())),
        a_(static_cast<std::size_t>(n_) * (n_ + m_)), b_(std::move(b)) {
    if (n_ == 0) throw InvalidArgument("system needs at least one row");
    if (static_cast<int>(a_prime.size()) != n_) throw InvalidArgument("A' row count differs from |b|");
    for (int i = 0; i < n_; ++i) {
      if (static_cast<int>(a_prime[i].size()) != m_) throw InvalidArgument("ragged A'");
      at(i, i) = 1;
      for (int j = 0; j < m_; ++j) {
        if (a_prime[i][j] < 0) throw InvalidArgument("A' has a negative entry");
        at(i, n_ + j) = a_prime[i][j];
      }
      if (b_[i] <= 0) throw InvalidArgument("b must be strictly positive");
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int cols() const { return n_ + m_; }
  const Rational &a(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols() + j]; }
  const std::vector<Rational> &b() const { return b_; }

  std::vector<Rational> column(int j) const {
    std::vector<Rational> c(n_);
    for (int i = 0; i < n_; ++i) c[i] = a(i, j);
    return c;
  }

private:
  Rational &at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols() + j]; }

  int n_ = 0;
  int m_ = 0;
  std::vector<Rational> a_;
  std::vector<Rational> b_;
};

/// Columns (sorted) and the full basic solution, zero off-basis.
struct FeasibleBasis {
  std::vector<int> columns;
  std::vector<Rational> solution;

  bool operator==(const FeasibleBasis &) const = default;
};

/// Solves A_B y = rhs by Gauss-Jordan elimination. `Value` only needs to be a
/// Q-vector space (Rational, or a symbolic perturbation). nullopt if A_B is singular.
template <class Value>
std::optional<std::vector<Value>> solve_columns(const StandardFormSystem &sys,
                                                std::span<const int> cols, std::vector<Value> rhs) {
  const int n = sys.n();
  if (static_cast<int>(cols.size()) != n || static_cast<int>(rhs.size()) != n)
    throw InvalidArgument("basis size must equal the row count");
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) mat[i][c] = sys.a(i, cols[c]);

  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && mat[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(mat[p], mat[c]);
    std::swap(rhs[p], rhs[c]);
    const Rational piv = mat[c][c];
    if (piv != 1) {
      for (int j = c; j < n; ++j) mat[c][j] /= piv;
      rhs[c] = rhs[c] / piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || mat[i][c] == 0) continue;
      const Rational f = mat[i][c];
      for (int j = c; j < n; ++j) mat[i][j] -= f * mat[c][j];
      rhs[i] = rhs[i] - f * rhs[c];
    }
  }
  return rhs;
}

inline void check_column_set(const StandardFormSystem &sys, std::span<const int> cols) {
  if (static_cast<int>(cols.size()) != sys.n()) throw InvalidArgument("basis size must equal n");
  std::vector<char> seen(sys.cols(), 0);
  for (int c : cols) {
    if (c < 0 || c >= sys.cols()) throw InvalidArgument("column index out of range");
    if (seen[c]++) throw InvalidArgument("duplicate column in basis");
  }
}

enum class BasisStatus { feasible, singular, infeasible };

inline BasisStatus basis_status(const StandardFormSystem &sys, std::span<const int> cols) {
  check_column_set(sys, cols);
  auto y = solve_columns(sys, cols, sys.b());
  if (!y) return BasisStatus::singular;
  for (const auto &v : *y)
    if (v < 0) return BasisStatus::infeasible;
  return BasisStatus::feasible;
}

/// Basic solution of the given columns; throws SingularBasis or InfeasibleBasis.
inline FeasibleBasis basic_solution(const StandardFormSystem &sys, std::span<const int> cols) {
  check_column_set(sys, cols);
  auto y = solve_columns(sys, cols, sys.b());
  if (!y) throw SingularBasis();
  FeasibleBasis fb;
  fb.solution.assign(sys.cols(), Rational(0));
  for (int c = 0; c < sys.n(); ++c) {
    if ((*y)[c] < 0) throw InfeasibleBasis(cols[c]);
    fb.solution[cols[c]] = (*y)[c];
  }
  fb.columns.assign(cols.begin(), cols.end());
  std::sort(fb.columns.begin(), fb.columns.end());
  return fb;
}

struct CardinalCandidate {
  int leaving;
  FeasibleBasis result;
};

/// Every leaving column whose swap with `entering` gives a feasible basis carrying
/// the pivoted solution (x moved along the entering edge by the min ratio). Under
/// degeneracy this includes zero-valued basics whose direction entry is positive.
/// Sorted by leaving column.
inline std::vector<CardinalCandidate> cardinal_pivot_candidates(const StandardFormSystem &sys,
                                                                const FeasibleBasis &basis,
                                                                int entering) {
  const int n = sys.n();
  if (entering < 0 || entering >= sys.cols()) throw InvalidArgument("entering column out of range");
  if (std::find(basis.columns.begin(), basis.columns.end(), entering) != basis.columns.end())
    throw InvalidArgument("entering column already basic");
  auto d = solve_columns(sys, basis.columns, sys.column(entering));
  if (!d) throw SingularBasis();

  // x_B(theta) = x_B - theta * d
  std::optional<Rational> theta;
  for (int p = 0; p < n; ++p) {
    if ((*d)[p] <= 0) continue;
    Rational r = basis.solution[basis.columns[p]] / (*d)[p];
    if (!theta || r < *theta) theta = r;
  }
  if (!theta) throw UnboundedDirection(entering);

  std::vector<Rational> x = basis.solution;
  for (int p = 0; p < n; ++p) x[basis.columns[p]] -= *theta * (*d)[p];
  x[entering] = *theta;

  std::vector<CardinalCandidate> out;
  for (int p = 0; p < n; ++p) {
    const int j = basis.columns[p];
    if ((*d)[p] == 0 || x[j] != 0) continue;
    CardinalCandidate cand{j, {}};
    cand.result.columns = basis.columns;
    cand.result.columns[p] = entering;
    std::sort(cand.result.columns.begin(), cand.result.columns.end());
    cand.result.solution = x;
    out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.leaving < b.leaving; });
  return out;
}

} // namespace scarf
