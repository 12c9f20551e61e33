#pragma once

#include "scarf/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scarf {

/// Integer matrix whose rows rank the columns. Only the within-row order matters.
class OrdinalMatrix {
public:
  OrdinalMatrix() = default;
  OrdinalMatrix(int n, int m) : n_(n), m_(m), c_(static_cast<std::size_t>(n) * (n + m)) {
    if (n <= 0 || m < 0) throw InvalidArgument("ordinal matrix dimensions");
  }

  static OrdinalMatrix from_rows(const std::vector<std::vector<std::int64_t>> &rows) {
    if (rows.empty()) throw InvalidArgument("ordinal matrix needs rows");
    const int n = static_cast<int>(rows.size());
    const int cols = static_cast<int>(rows[0].size());
    if (cols < n) throw InvalidArgument("ordinal matrix has fewer columns than rows");
    OrdinalMatrix c(n, cols - n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != cols) throw InvalidArgument("ragged ordinal matrix");
      for (int j = 0; j < cols; ++j) c.set(i, j, rows[i][j]);
    }
    return c;
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int cols() const { return n_ + m_; }
  std::int64_t operator()(int i, int j) const { return c_[static_cast<std::size_t>(i) * cols() + j]; }
  void set(int i, int j, std::int64_t v) { c_[static_cast<std::size_t>(i) * cols() + j] = v; }
  std::span<const std::int64_t> row(int i) const {
    return {c_.data() + static_cast<std::size_t>(i) * cols(), static_cast<std::size_t>(cols())};
  }

  bool operator==(const OrdinalMatrix &) const = default;

private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::int64_t> c_;
};

struct OrdinalViolation {
  enum Kind { duplicate_in_row, diagonal_not_minimal, slack_not_maximal } kind;
  // 0-based; for duplicate_in_row c(i,j) == c(i,k); for diagonal_not_minimal
  // c(i,i) >= c(i,k) with j == i; for slack_not_maximal c(i,k) >= c(i,j).
  int i, j, k;
};

/// First violation of the ordinal-matrix conditions, scanning row by row.
inline std::optional<OrdinalViolation> validate_ordinal_matrix(const OrdinalMatrix &c) {
  const int n = c.n(), cols = c.cols();
  for (int i = 0; i < n; ++i) {
    std::int64_t max_nonslack = 0;
    int argmax = -1;
    for (int k = n; k < cols; ++k) {
      if (c(i, i) >= c(i, k)) return OrdinalViolation{OrdinalViolation::diagonal_not_minimal, i, i, k};
      if (argmax < 0 || c(i, k) > max_nonslack) max_nonslack = c(i, k), argmax = k;
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (c(i, j) <= c(i, i)) return OrdinalViolation{OrdinalViolation::diagonal_not_minimal, i, i, j};
      if (argmax >= 0 && c(i, j) <= max_nonslack)
        return OrdinalViolation{OrdinalViolation::slack_not_maximal, i, j, argmax};
    }
    std::vector<int> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c(i, a) != c(i, b) ? c(i, a) < c(i, b) : a < b; });
    for (int t = 1; t < cols; ++t)
      if (c(i, order[t]) == c(i, order[t - 1]))
        return OrdinalViolation{OrdinalViolation::duplicate_in_row, i, order[t - 1], order[t]};
  }
  return std::nullopt;
}

/// Column set with its utility vector and the row -> column "disliked" bijection.
struct OrdinalBasis {
  std::vector<int> columns; // sorted
  std::vector<std::int64_t> utility;
  std::vector<int> disliked; // row -> column

  int row_of(int column) const {
    for (std::size_t i = 0; i < disliked.size(); ++i)
      if (disliked[i] == column) return static_cast<int>(i);
    return -1;
  }
  bool contains(int column) const {
    return std::binary_search(columns.begin(), columns.end(), column);
  }
  bool operator==(const OrdinalBasis &) const = default;
};

inline void check_ordinal_columns(const OrdinalMatrix &c, std::span<const int> cols) {
  if (static_cast<int>(cols.size()) != c.n()) throw InvalidArgument("ordinal basis size must equal n");
  std::vector<char> seen(c.cols(), 0);
  for (int j : cols) {
    if (j < 0 || j >= c.cols()) throw InvalidArgument("column index out of range");
    if (seen[j]++) throw InvalidArgument("duplicate column in ordinal basis");
  }
}

/// Row minima over `cols` plus the domination check over every column. Throws
/// NotOrdinalBasis with the first undominated column, or DuplicateMinimizer (ties
/// within a row, so only for malformed C).
inline OrdinalBasis compute_utility(const OrdinalMatrix &c, std::span<const int> cols) {
  check_ordinal_columns(c, cols);
  const int n = c.n();
  OrdinalBasis d;
  d.columns.assign(cols.begin(), cols.end());
  std::sort(d.columns.begin(), d.columns.end());
  d.utility.resize(n);
  d.disliked.resize(n);
  for (int i = 0; i < n; ++i) {
    int best = d.columns[0];
    for (int j : d.columns)
      if (c(i, j) < c(i, best)) best = j;
    d.utility[i] = c(i, best);
    d.disliked[i] = best;
  }
  // Members count too: a member is dominated only if it is some row's minimum.
  for (int h = 0; h < c.cols(); ++h) {
    bool dominated = false;
    for (int i = 0; i < n && !dominated; ++i) dominated = c(i, h) <= d.utility[i];
    if (!dominated) throw NotOrdinalBasis(h);
  }
  std::vector<int> seen(c.cols(), -1);
  for (int i = 0; i < n; ++i) {
    if (seen[d.disliked[i]] >= 0) throw DuplicateMinimizer(d.disliked[i]);
    seen[d.disliked[i]] = i;
  }
  return d;
}

inline bool is_ordinal_basis(const OrdinalMatrix &c, std::span<const int> cols) {
  try {
    compute_utility(c, cols);
    return true;
  } catch (const NotOrdinalBasis &) {
    return false;
  } catch (const DuplicateMinimizer &) {
    return false;
  }
}

struct OrdinalPivotResult {
  int leaving = -1;
  int reference = -1;
  int entering = -1;
  int row_loser = -1;  // i_r
  int row_gainer = -1; // i_l
  int candidate_set_size = 0;

  bool operator==(const OrdinalPivotResult &) const = default;
};

struct OrdinalPivotOutcome {
  OrdinalPivotResult result;
  OrdinalBasis basis;
};

/// Straight-from-the-definition ordinal pivot: O(n * cols). Used as the reference
/// for OrdinalState and by callers that pivot a single basis.
inline OrdinalPivotOutcome ordinal_pivot(const OrdinalMatrix &c, const OrdinalBasis &d, int leaving) {
  const int n = c.n();
  if (!d.contains(leaving)) throw InvalidArgument("leaving column not in ordinal basis");
  std::vector<int> rest;
  for (int j : d.columns)
    if (j != leaving) rest.push_back(j);
  if (std::all_of(rest.begin(), rest.end(), [n](int j) { return j < n; }))
    throw InvalidArgument("remaining columns are all slack");

  OrdinalPivotResult r;
  r.leaving = leaving;
  r.row_gainer = d.row_of(leaving);
  const int il = r.row_gainer;

  std::vector<std::int64_t> ubar = d.utility;
  int jr = rest[0];
  for (int j : rest)
    if (c(il, j) < c(il, jr)) jr = j;
  ubar[il] = c(il, jr);
  r.reference = jr;
  r.row_loser = d.row_of(jr);
  const int ir = r.row_loser;

  int best = -1;
  for (int k = 0; k < c.cols(); ++k) {
    bool in_k = true;
    for (int i = 0; i < n && in_k; ++i)
      if (i != ir && c(i, k) <= ubar[i]) in_k = false;
    if (!in_k) continue;
    ++r.candidate_set_size;
    if (best < 0 || c(ir, k) > c(ir, best)) best = k;
  }
  if (best < 0) throw EmptyCandidateSet();
  r.entering = best;

  OrdinalPivotOutcome out{r, {}};
  rest.push_back(best);
  try {
    out.basis = compute_utility(c, rest);
  } catch (const Error &e) {
    throw InternalError(std::string("ordinal pivot produced a non-basis: ") + e.what());
  }
  return out;
}

/// Mutable ordinal basis with O(moved entries) pivots.
///
/// Keeps per-row rank orders and, for every column h, the number of rows i with
/// c(i,h) <= u_i. A pivot changes exactly two utilities, so only the columns whose
/// rank lies between the old and new utility of those rows are touched.
class OrdinalState {
public:
  OrdinalState(const OrdinalMatrix &c, std::span<const int> cols)
      : c_(&c), n_(c.n()), cols_(c.cols()), rank_(static_cast<std::size_t>(n_) * cols_),
        order_(static_cast<std::size_t>(n_) * cols_) {
    build_ranks();
    OrdinalBasis d = compute_utility(c, cols);
    d_ = d.columns;
    in_d_.assign(cols_, 0);
    row_of_.assign(cols_, -1);
    pos_.assign(cols_, -1);
    for (int p = 0; p < n_; ++p) in_d_[d_[p]] = 1, pos_[d_[p]] = p;
    u_rank_.resize(n_);
    disliked_ = d.disliked;
    for (int i = 0; i < n_; ++i) {
      u_rank_[i] = rank(i, disliked_[i]);
      row_of_[disliked_[i]] = i;
    }
    blockers_.assign(cols_, 0);
    for (int i = 0; i < n_; ++i)
      for (int r = 0; r <= u_rank_[i]; ++r) ++blockers_[at_rank(i, r)];
  }

  int n() const { return n_; }
  const OrdinalMatrix &matrix() const { return *c_; }
  const std::vector<int> &columns() const { return d_; } // unordered
  bool contains(int j) const { return in_d_[j] != 0; }
  int row_of(int j) const { return row_of_[j]; }
  int disliked(int i) const { return disliked_[i]; }
  std::int64_t utility(int i) const { return (*c_)(i, disliked_[i]); }

  std::vector<int> sorted_columns() const {
    std::vector<int> s = d_;
    std::sort(s.begin(), s.end());
    return s;
  }
  std::vector<std::int64_t> utility_vector() const {
    std::vector<std::int64_t> u(n_);
    for (int i = 0; i < n_; ++i) u[i] = utility(i);
    return u;
  }
  OrdinalBasis snapshot() const {
    return OrdinalBasis{sorted_columns(), utility_vector(), disliked_};
  }

  /// Ordinal pivot removing `leaving`; same result as ordinal_pivot().
  OrdinalPivotResult pivot(int leaving) {
    if (leaving < 0 || leaving >= cols_ || !in_d_[leaving])
      throw InvalidArgument("leaving column not in ordinal basis");
    bool has_nonslack = false;
    for (int j : d_)
      if (j != leaving && j >= n_) has_nonslack = true;
    if (!has_nonslack) throw InvalidArgument("remaining columns are all slack");

    OrdinalPivotResult r;
    r.leaving = leaving;
    const int il = row_of_[leaving];
    r.row_gainer = il;
    int jr = -1;
    for (int j : d_)
      if (j != leaving && (jr < 0 || rank(il, j) < rank(il, jr))) jr = j;
    r.reference = jr;
    const int ir = row_of_[jr];
    r.row_loser = ir;

    raise(il, rank(il, jr));

    // K lies strictly below u_{i_r} in row i_r; a column is in K iff i_r is its only blocker.
    int best = -1;
    int count = 0;
    for (int rr = u_rank_[ir] - 1; rr >= 0; --rr) {
      const int h = at_rank(ir, rr);
      if (blockers_[h] != 1) continue;
      if (best < 0) best = h;
      ++count;
      if (!count_candidates_) break;
    }
    if (best < 0) throw EmptyCandidateSet();
    r.entering = best;
    r.candidate_set_size = count_candidates_ ? count : -1;

    lower(ir, rank(ir, best));

    const int p = pos_[leaving];
    d_[p] = best;
    pos_[best] = p;
    pos_[leaving] = -1;
    in_d_[leaving] = 0;
    in_d_[best] = 1;
    row_of_[leaving] = -1;
    disliked_[il] = jr;
    row_of_[jr] = il;
    disliked_[ir] = best;
    row_of_[best] = ir;
    return r;
  }

  /// |K| is only known after a full scan of row i_r below its utility. Turning the
  /// count off stops at the argmax and reports candidate_set_size = -1.
  void set_count_candidates(bool on) { count_candidates_ = on; }

private:
  int rank(int i, int j) const { return rank_[static_cast<std::size_t>(i) * cols_ + j]; }
  int at_rank(int i, int r) const { return order_[static_cast<std::size_t>(i) * cols_ + r]; }

  void build_ranks() {
    std::vector<int> idx(cols_);
    for (int i = 0; i < n_; ++i) {
      int *ord = order_.data() + static_cast<std::size_t>(i) * cols_;
      int *rk = rank_.data() + static_cast<std::size_t>(i) * cols_;
      // Rows that are already a permutation of 0..cols-1 (as in the marriage
      // matrix) need no sort.
      bool perm = true;
      std::fill(ord, ord + cols_, -1);
      for (int j = 0; j < cols_ && perm; ++j) {
        const auto v = (*c_)(i, j);
        if (v < 0 || v >= cols_ || ord[v] >= 0) perm = false;
        else ord[v] = j;
      }
      if (!perm) {
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return (*c_)(i, a) < (*c_)(i, b); });
        std::copy(idx.begin(), idx.end(), ord);
      }
      for (int r = 0; r < cols_; ++r) rk[ord[r]] = r;
    }
  }

  void raise(int i, int new_rank) {
    for (int r = u_rank_[i] + 1; r <= new_rank; ++r) ++blockers_[at_rank(i, r)];
    u_rank_[i] = new_rank;
  }
  void lower(int i, int new_rank) {
    for (int r = new_rank + 1; r <= u_rank_[i]; ++r) --blockers_[at_rank(i, r)];
    u_rank_[i] = new_rank;
  }

  const OrdinalMatrix *c_;
  int n_, cols_;
  std::vector<int> rank_, order_;
  std::vector<int> d_, pos_, row_of_, disliked_, u_rank_, blockers_;
  std::vector<char> in_d_;
  bool count_candidates_ = true;
};

} // namespace scarf
