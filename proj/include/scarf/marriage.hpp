#pragma once

#include "scarf/instance.hpp"
#include "scarf/scarf.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace scarf {

// ---------------------------------------------------------------------------
// Edges and columns

/// Endpoints as node indices; a loop has a == b.
struct Edge {
  int a;
  int b;
  bool loop() const { return a == b; }
  bool operator==(const Edge &) const = default;
};

/// Columns 0..n-1 are loops (men, then women). Man i's valid edges occupy
/// columns n + i*k .. n + i*k + k-1 in his preference order.
class EdgeIndex {
public:
  explicit EdgeIndex(const MarriageInstance &inst)
      : k_(inst.k), men_(inst.men), man_rank_(inst.man_rank) {}

  int k() const { return k_; }
  int n() const { return 2 * k_; }
  int cols() const { return 2 * k_ + k_ * k_; }
  bool is_loop(int col) const { return col < n(); }
  bool is_man(int node) const { return node < k_; }

  Edge edge(int col) const {
    if (col < 0 || col >= cols()) throw InvalidArgument("column out of range");
    if (col < n()) return {col, col};
    const int t = col - n();
    return {t / k_, k_ + men_[t / k_][t % k_]};
  }
  /// Column of (man, woman) with both 0-based within their side.
  int column(int man, int woman) const { return n() + man * k_ + man_rank_[man][woman]; }
  bool incident(int col, int node) const {
    const Edge e = edge(col);
    return e.a == node || e.b == node;
  }

private:
  int k_;
  std::vector<std::vector<int>> men_;
  std::vector<std::vector<int>> man_rank_;
};

/// Node-edge incidence matrix with identity loop block; b = all ones.
inline StandardFormSystem build_system(const MarriageInstance &inst) {
  const EdgeIndex ei(inst);
  const int n = ei.n(), m = inst.m();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m, Rational(0)));
  for (int j = 0; j < m; ++j) {
    const Edge e = ei.edge(n + j);
    a[e.a][j] = 1;
    a[e.b][j] = 1;
  }
  return StandardFormSystem(a, std::vector<Rational>(n, Rational(1)));
}

enum class ValueClass { S, M, L, XL };

inline ValueClass value_class(int k, std::int64_t v) {
  if (v == 0) return ValueClass::S;
  if (v <= k) return ValueClass::M;
  if (v <= static_cast<std::int64_t>(k) * k) return ValueClass::L;
  return ValueClass::XL;
}

/// The consistent ordinal matrix: own loop 0, incident edges k+1-rank, other valid
/// edges k^2 down to k+1 and other loops k^2+2k-1 down to k^2+1, left to right.
inline OrdinalMatrix build_ordinal_matrix(const MarriageInstance &inst) {
  const EdgeIndex ei(inst);
  const int k = inst.k, n = ei.n();
  OrdinalMatrix c(n, inst.m());
  for (int i = 0; i < n; ++i) {
    std::int64_t xl = static_cast<std::int64_t>(k) * k + 2 * k - 1;
    std::int64_t l = static_cast<std::int64_t>(k) * k;
    for (int j = 0; j < n; ++j) c.set(i, j, j == i ? 0 : xl--);
    for (int j = n; j < ei.cols(); ++j) {
      const Edge e = ei.edge(j);
      if (e.a == i) c.set(i, j, k - inst.man_rank[i][e.b - k]);
      else if (e.b == i) c.set(i, j, k - inst.woman_rank[i - k][e.a]);
      else c.set(i, j, l--);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Graph view of a basis

class BasisGraphViolation : public Error {
public:
  using Error::Error;
};

struct BasisComponent {
  int root = -1; // node carrying the loop
  int loop = -1; // loop column
  std::vector<int> nodes;
  std::vector<int> edges; // valid edge columns
};

struct BasisGraph {
  std::vector<BasisComponent> components;
  std::vector<int> component_of; // node -> component
  std::vector<int> degree;       // node -> incident basis columns, loops count once
  std::vector<Rational> x;       // column -> basic value
};

namespace detail {
struct DisjointSets {
  std::vector<int> p;
  explicit DisjointSets(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};
} // namespace detail

/// Why `cols` is not a forest with exactly one loop per component, or nullopt.
inline std::optional<std::string> basis_graph_violation(const EdgeIndex &ei, std::span<const int> cols) {
  const int n = ei.n();
  detail::DisjointSets ds(n);
  for (int j : cols) {
    const Edge e = ei.edge(j);
    if (e.loop()) continue;
    if (!ds.unite(e.a, e.b))
      return "valid edges close a cycle through column " + std::to_string(j + 1);
  }
  std::vector<int> loops(n, 0);
  for (int j : cols)
    if (ei.is_loop(j)) ++loops[ds.find(j)];
  for (int v = 0; v < n; ++v)
    if (ds.find(v) == v && loops[v] != 1)
      return "component of node " + std::to_string(v + 1) + " has " + std::to_string(loops[v]) + " loops";
  return std::nullopt;
}

/// Graph view of a feasible basis. Throws BasisGraphViolation.
inline BasisGraph validate_basis_graph(const EdgeIndex &ei, const FeasibleBasis &basis) {
  if (static_cast<int>(basis.columns.size()) != ei.n()) throw InvalidArgument("basis size must equal n");
  if (auto why = basis_graph_violation(ei, basis.columns)) throw BasisGraphViolation(*why);
  const int n = ei.n();
  BasisGraph g;
  g.x = basis.solution;
  g.degree.assign(n, 0);
  g.component_of.assign(n, -1);
  std::vector<std::vector<int>> adj(n);
  std::vector<int> loop_col(n, -1);
  for (int j : basis.columns) {
    const Edge e = ei.edge(j);
    if (e.loop()) {
      loop_col[e.a] = j;
      ++g.degree[e.a];
    } else {
      adj[e.a].push_back(j);
      adj[e.b].push_back(j);
      ++g.degree[e.a], ++g.degree[e.b];
    }
  }
  for (int r = 0; r < n; ++r) {
    if (loop_col[r] < 0) continue;
    BasisComponent comp;
    comp.root = r;
    comp.loop = loop_col[r];
    const int id = static_cast<int>(g.components.size());
    std::vector<int> stack{r};
    g.component_of[r] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.nodes.push_back(v);
      for (int j : adj[v]) {
        const Edge e = ei.edge(j);
        const int w = e.a == v ? e.b : e.a;
        if (g.component_of[w] >= 0) continue;
        g.component_of[w] = id;
        comp.edges.push_back(j);
        stack.push_back(w);
      }
    }
    std::sort(comp.nodes.begin(), comp.nodes.end());
    std::sort(comp.edges.begin(), comp.edges.end());
    g.components.push_back(std::move(comp));
  }
  return g;
}

/// Valid edges with basic value 1.
inline Matching matching_from_basis(const EdgeIndex &ei, const FeasibleBasis &basis) {
  std::vector<std::pair<int, int>> pairs;
  for (int j : basis.columns) {
    if (ei.is_loop(j)) continue;
    if (basis.solution[j] == 1) {
      const Edge e = ei.edge(j);
      pairs.emplace_back(e.a, e.b - ei.k());
    } else if (basis.solution[j] != 0) {
      throw InvariantViolation("fractional basic value on column " + std::to_string(j + 1));
    }
  }
  return Matching::from_pairs(ei.k(), pairs);
}

// ---------------------------------------------------------------------------
// Disliked edges and the separator

enum class Disliker { man, woman, m1 };

struct DislikedColumn {
  int column;
  int row; // node that dislikes the column
  Disliker by;
  bool operator==(const DislikedColumn &) const = default;
};

/// Every column of D with the node that dislikes it. A valid edge can only be
/// disliked by its man, its woman or m1; anything else is an InvariantViolation.
inline std::vector<DislikedColumn> classify_disliked(const OrdinalBasis &d, const EdgeIndex &ei) {
  std::vector<DislikedColumn> out;
  for (int i = 0; i < static_cast<int>(d.disliked.size()); ++i) {
    const int j = d.disliked[i];
    const Edge e = ei.edge(j);
    Disliker by = i == 0 ? Disliker::m1 : ei.is_man(i) ? Disliker::man : Disliker::woman;
    if (e.loop() && e.a != i)
      throw InvariantViolation("loop " + std::to_string(j + 1) + " disliked by another node");
    if (!e.loop() && i != 0 && e.a != i && e.b != i)
      throw InvariantViolation("edge " + std::to_string(j + 1) + " disliked by a non-endpoint other than m1");
    out.push_back({j, i, by});
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.column < b.column; });
  return out;
}

struct SeparatorState {
  Phase phase = Phase::none;
  int separator = 0; // 1-based man index; 1 in the M-phase
  std::pair<std::int64_t, std::int64_t> potential{0, 0};
};

namespace detail {
template <class Columns, class UtilityOf>
SeparatorState separator_of(const EdgeIndex &ei, const Columns &cols, UtilityOf u) {
  const int k = ei.k();
  SeparatorState s;
  std::int64_t women = 0;
  for (int w = k; w < 2 * k; ++w) women += u(w);
  const ValueClass c1 = value_class(k, u(0));
  if (c1 == ValueClass::M) {
    s.phase = Phase::M;
    s.separator = 1;
    s.potential = {k + 1, women};
    return s;
  }
  if (c1 != ValueClass::L) throw NoSeparator();
  std::vector<char> has_loop(k, 0), has_valid(k, 0);
  for (int j : cols) {
    const Edge e = ei.edge(j);
    if (!ei.is_man(e.a)) continue;
    (e.loop() ? has_loop : has_valid)[e.a] = 1;
  }
  if (has_loop[0] || has_valid[0]) throw NoSeparator();
  int sep = -1;
  for (int i = 1; i < k; ++i)
    if (has_loop[i]) {
      sep = i;
      break;
    }
  if (sep < 0 || !has_valid[sep]) throw NoSeparator();
  for (int i = 1; i < sep; ++i)
    if (!has_valid[i]) throw NoSeparator();
  for (int i = sep + 1; i < k; ++i)
    if (!has_loop[i] || has_valid[i]) throw NoSeparator();
  s.phase = Phase::L;
  s.separator = sep + 1;
  s.potential = {sep + 1, women};
  return s;
}
} // namespace detail

/// Phase from the value class of u_1, and in the L-phase the unique man meeting all
/// separator conditions. Throws NoSeparator otherwise.
inline SeparatorState find_separator(const OrdinalBasis &d, const EdgeIndex &ei) {
  return detail::separator_of(ei, d.columns, [&](int i) { return d.utility[i]; });
}

inline SeparatorState find_separator(const OrdinalState &d, const EdgeIndex &ei) {
  return detail::separator_of(ei, d.columns(), [&](int i) { return d.utility(i); });
}

// ---------------------------------------------------------------------------
// Cardinal pivots on the matching polytope

/// Adding a column to a forest with single loops creates exactly one circuit: an
/// even cycle, or a path joining two loops. `sign` is the direction of change of
/// each circuit column per unit increase of the entering one.
struct Circuit {
  std::vector<int> cols;
  std::vector<int> sign;
  bool cycle = false;
};

/// Graph engine: O(component size) per pivot, values stay in {0,1}.
class MatchingCardinal {
public:
  explicit MatchingCardinal(const EdgeIndex &ei)
      : ei_(&ei), n_(ei.n()), adj_(n_), loop_(n_, 1), x_(ei.cols(), 0), in_b_(ei.cols(), 0),
        mark_(n_, 0), parent_(n_, -1) {
    for (int i = 0; i < n_; ++i) cols_.push_back(i), x_[i] = 1, in_b_[i] = 1;
  }

  const std::vector<int> &columns() const { return cols_; }
  bool contains(int col) const { return in_b_[col] != 0; }
  int value(int col) const { return x_[col]; }
  int rounded_value(int col) const { return x_[col]; }

  /// The circuit closed by `entering`; starts with `entering` itself.
  Circuit circuit(int entering) {
    if (entering < 0 || entering >= ei_->cols()) throw InvalidArgument("entering column out of range");
    if (in_b_[entering]) throw InvalidArgument("entering column already basic");
    const Edge e = ei_->edge(entering);
    Circuit c;
    c.cols.push_back(entering);
    if (!e.loop()) {
      std::vector<int> p = path(e.b, [&](int v) { return v == e.a; });
      if (!p.empty() && end_ == e.a) {
        c.cycle = true;
        c.cols.insert(c.cols.end(), p.begin(), p.end());
      } else {
        std::vector<int> left = path(e.a, [&](int v) { return loop_[v] != 0; });
        const int ra = end_;
        std::vector<int> right = path(e.b, [&](int v) { return loop_[v] != 0; });
        const int rb = end_;
        if (ra < 0 || rb < 0) throw InternalError("component without a loop");
        std::vector<int> seq{ra};
        seq.insert(seq.end(), left.rbegin(), left.rend());
        seq.push_back(entering);
        seq.insert(seq.end(), right.begin(), right.end());
        seq.push_back(rb);
        c.cols = seq;
      }
    } else {
      std::vector<int> p = path(e.a, [&](int v) { return loop_[v] != 0; });
      if (end_ < 0) throw InternalError("component without a loop");
      c.cols.insert(c.cols.end(), p.begin(), p.end());
      c.cols.push_back(end_);
    }
    const int at = static_cast<int>(std::find(c.cols.begin(), c.cols.end(), entering) - c.cols.begin());
    c.sign.resize(c.cols.size());
    for (int t = 0; t < static_cast<int>(c.cols.size()); ++t) c.sign[t] = ((t - at) % 2 == 0) ? 1 : -1;
    return c;
  }

  std::vector<int> candidates(int entering) {
    cached_ = circuit(entering);
    cached_entering_ = entering;
    theta_ = -1;
    for (std::size_t t = 0; t < cached_.cols.size(); ++t)
      if (cached_.sign[t] < 0 && (theta_ < 0 || x_[cached_.cols[t]] < theta_)) theta_ = x_[cached_.cols[t]];
    if (theta_ < 0) throw UnboundedDirection(entering);
    std::vector<int> out;
    for (std::size_t t = 0; t < cached_.cols.size(); ++t) {
      const int j = cached_.cols[t];
      if (j != entering && x_[j] + theta_ * cached_.sign[t] == 0) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void pivot(int entering, int leaving) {
    if (entering != cached_entering_) candidates(entering);
    bool ok = false;
    for (std::size_t t = 0; t < cached_.cols.size(); ++t)
      if (cached_.cols[t] == leaving && leaving != entering &&
          x_[leaving] + theta_ * cached_.sign[t] == 0)
        ok = true;
    if (!ok) throw InvalidArgument("leaving column is not a candidate");
    for (std::size_t t = 0; t < cached_.cols.size(); ++t) x_[cached_.cols[t]] += theta_ * cached_.sign[t];
    x_[entering] = theta_;
    remove(leaving);
    add(entering);
    cached_entering_ = -1;
  }

  FeasibleBasis feasible_basis() const {
    FeasibleBasis fb;
    fb.columns = cols_;
    std::sort(fb.columns.begin(), fb.columns.end());
    fb.solution.assign(ei_->cols(), Rational(0));
    for (int j : cols_) fb.solution[j] = x_[j];
    return fb;
  }

private:
  // Tree path from `from` to the first node satisfying `stop` (BFS within the
  // component). Returns the edge columns in order from `from`; end_ is the node
  // reached or -1.
  template <class Stop>
  std::vector<int> path(int from, Stop stop) {
    ++stamp_;
    end_ = -1;
    queue_.clear();
    queue_.push_back(from);
    mark_[from] = stamp_;
    parent_[from] = -1;
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      const int v = queue_[h];
      if (stop(v)) {
        end_ = v;
        break;
      }
      for (int j : adj_[v]) {
        const Edge e = ei_->edge(j);
        const int w = e.a == v ? e.b : e.a;
        if (mark_[w] == stamp_) continue;
        mark_[w] = stamp_;
        parent_[w] = j;
        queue_.push_back(w);
      }
    }
    std::vector<int> out;
    if (end_ < 0) return out;
    for (int v = end_; parent_[v] >= 0;) {
      const int j = parent_[v];
      out.push_back(j);
      const Edge e = ei_->edge(j);
      v = e.a == v ? e.b : e.a;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  void remove(int j) {
    const Edge e = ei_->edge(j);
    if (e.loop()) loop_[e.a] = 0;
    else {
      auto drop = [j](std::vector<int> &v) { v.erase(std::find(v.begin(), v.end(), j)); };
      drop(adj_[e.a]);
      drop(adj_[e.b]);
    }
    in_b_[j] = 0;
    cols_.erase(std::find(cols_.begin(), cols_.end(), j));
  }
  void add(int j) {
    const Edge e = ei_->edge(j);
    if (e.loop()) loop_[e.a] = 1;
    else adj_[e.a].push_back(j), adj_[e.b].push_back(j);
    in_b_[j] = 1;
    cols_.push_back(j);
  }

  const EdgeIndex *ei_;
  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> loop_;
  std::vector<int> x_;
  std::vector<char> in_b_;
  std::vector<int> cols_;
  std::vector<int> mark_, parent_, queue_;
  int stamp_ = 0, end_ = -1;
  Circuit cached_;
  int cached_entering_ = -1;
  int theta_ = 0;
};

// ---------------------------------------------------------------------------
// The pivoting rule

/// Separator loop when it is a candidate, otherwise the smallest woman-disliked
/// candidate. With `check` on, the structural invariants are asserted every iteration.
class MarriageStrategy {
public:
  MarriageStrategy(const EdgeIndex &ei, bool check) : ei_(&ei), check_(check) {}

  template <class Ctx>
  int choose(const Ctx &ctx) {
    sep_ = find_separator(ctx.D, *ei_);
    const int sep_loop = sep_.separator - 1;
    if (std::binary_search(ctx.candidates.begin(), ctx.candidates.end(), sep_loop)) return sep_loop;
    for (int j : ctx.candidates) {
      const int r = ctx.D.row_of(j);
      if (r >= ei_->k()) return j;
    }
    throw NoValidCandidate();
  }

  /// For callers that pick the leaving column themselves but still want the
  /// annotations and checks.
  void use_separator(const SeparatorState &s) { sep_ = s; }

  template <class Ctx>
  void annotate(IterationRecord &rec, const Ctx &ctx) {
    rec.phase = sep_.phase;
    rec.separator = sep_.separator;
    rec.potential = sep_.potential;
    if (check_) check_pair(ctx);
  }

  template <class Ctx>
  void after_ordinal(const Ctx &ctx, const OrdinalPivotResult &res, IterationRecord &rec) {
    if (!check_) return;
    const int k = ei_->k();
    const auto &c = ctx.C;
    const auto &d = ctx.D; // already pivoted
    auto fail = [&](const std::string &what) {
      throw InvariantViolation("iteration " + std::to_string(rec.iteration) + ": " + what);
    };
    if (ei_->is_loop(res.reference)) fail("reference column is a loop");
    if (value_class(k, c(res.row_gainer, res.reference)) != ValueClass::M)
      fail("reference entry of the gaining row is not in M");
    for (int i = 0; i < ei_->n(); ++i) {
      const auto before = rec.utility[i], after = d.utility(i);
      if (i == res.row_gainer ? !(after > before)
                              : i == res.row_loser ? !(after < before) : after != before)
        fail("utility change of row " + std::to_string(i + 1));
    }
    const bool sep_loop_left = rec.phase == Phase::L && rec.leaving == rec.separator - 1;
    if (sep_loop_left) {
      const int i = rec.separator - 1;
      if (res.row_gainer != i || res.row_loser != 0) fail("separator loop pivot rows");
      const bool last = i == k - 1;
      const int next = last ? 0 : i + 1;
      if (ei_->is_loop(res.entering) || !ei_->incident(res.entering, next))
        fail("separator loop pivot entered a column not incident to the next man");
      if (value_class(k, d.utility(0)) != (last ? ValueClass::M : ValueClass::L))
        fail("u1 class after separator loop pivot");
    } else {
      if (res.row_gainer < k) fail("leaving column was not woman-disliked");
      if (res.row_loser >= k) fail("losing row is not a man");
      if (ei_->is_loop(res.entering)) fail("entering column is a loop");
    }
    const SeparatorState next = find_separator(d, *ei_);
    const auto [a0, b0] = rec.potential;
    const auto [a1, b1] = next.potential;
    if (a1 < a0 || b1 < b0 || (a1 == a0 && b1 == b0)) fail("potential did not increase");
  }

private:
  template <class Ctx>
  void check_pair(const Ctx &ctx) {
    const int k = ei_->k(), n = ei_->n();
    const auto &d = ctx.D;
    auto fail = [&](const std::string &what) {
      throw InvariantViolation("iteration " + std::to_string(ctx.iteration) + ": " + what);
    };
    const int er = d.row_of(ctx.entering);
    if (er < 0 || er >= k) fail("entering column is not man-disliked");
    if (sep_.phase == Phase::L) {
      for (int i = 1; i < n; ++i) {
        const auto cls = value_class(k, d.utility(i));
        if (cls != ValueClass::S && cls != ValueClass::M) fail("utility of row " + std::to_string(i + 1) + " outside S and M");
      }
      bool single_woman = false;
      for (int w = k; w < n && !single_woman; ++w)
        single_woman = d.contains(w) && ctx.B.contains(w) && ctx.B.rounded_value(w) == 1;
      if (!single_woman) fail("no unmatched woman with her loop in both bases");
      int right = -1;
      for (int j : d.columns()) right = std::max(right, j);
      if (ei_->is_loop(right) || !ei_->incident(right, sep_.separator - 1))
        fail("rightmost column of D is not incident to the separator");
    } else {
      for (int i = 0; i < k; ++i)
        if (d.contains(i)) fail("man loop in D during the M-phase");
      const int j1 = d.disliked(0);
      if (ei_->is_loop(j1) || !ei_->incident(j1, 0)) fail("m1-disliked column not incident to m1");
    }
  }

  const EdgeIndex *ei_;
  bool check_;
  SeparatorState sep_;
};

// ---------------------------------------------------------------------------
// Solving

#ifdef SCARF_CHECK_INVARIANTS
inline constexpr bool default_invariant_checks = true;
#else
inline constexpr bool default_invariant_checks = false;
#endif

struct SolveOptions {
  bool check_invariants = default_invariant_checks;
  long max_iterations = 0; // 0: k^2 + k + 2
  bool record_sets = true;
  bool count_ordinal_candidates = true;
};

struct SolveResult {
  Matching matching;
  PivotTrace trace;
  FeasibleBasis basis;
  int iterations() const { return static_cast<int>(trace.iterations.size()); }
};

/// Any failure inside solve, with the trace up to the failing iteration.
class SolveFailure : public Error {
public:
  SolveFailure(const std::string &what, bool internal, PivotTrace trace)
      : Error(what), internal(internal), trace(std::move(trace)) {}
  bool internal; // an invariant failed, as opposed to a resource limit
  PivotTrace trace;
};

inline long default_iteration_cap(int k) { return static_cast<long>(k) * k + k + 2; }

inline SolveResult solve(const MarriageInstance &inst, const OrdinalMatrix &c, const SolveOptions &opts = {}) {
  const EdgeIndex ei(inst);
  MatchingCardinal engine(ei);
  MarriageStrategy rule(ei, opts.check_invariants);
  RunOptions ro;
  ro.max_iterations = opts.max_iterations > 0 ? opts.max_iterations : default_iteration_cap(inst.k);
  ro.record_sets = opts.record_sets;
  ro.count_ordinal_candidates = opts.count_ordinal_candidates;
  RunResult rr;
  try {
    run_into(c, engine, rule, ro, rr);
  } catch (const InternalError &e) {
    throw SolveFailure(e.what(), true, std::move(rr.trace));
  } catch (const Error &e) {
    throw SolveFailure(e.what(), false, std::move(rr.trace));
  }
  SolveResult out{matching_from_basis(ei, rr.basis), std::move(rr.trace), std::move(rr.basis)};
  if (auto bp = blocking_pair(inst, out.matching))
    throw SolveFailure("output blocked by (" + std::to_string(bp->first + 1) + "," +
                           std::to_string(bp->second + 1) + ")",
                       true, std::move(out.trace));
  return out;
}

inline SolveResult solve(const MarriageInstance &inst, const SolveOptions &opts = {}) {
  return solve(inst, build_ordinal_matrix(inst), opts);
}

// ---------------------------------------------------------------------------
// Instance families

/// Men list w_i, w_{i+1}, w_{i+k/2+1}, w_{i+k/2+2}; women the mirror image. For k
/// below 6 the four indices collide mod k, so the men's lists are completed in
/// index order first and the women mirror the complete lists (position k+1-l).
inline MarriageInstance irving_leather(int k) {
  if (k <= 0 || k % 2) throw OddK(k);
  auto mod = [k](int v) { return ((v % k) + k) % k; };
  std::vector<std::vector<int>> men(k), women(k);
  for (int i = 0; i < k; ++i) {
    for (int v : {i, i + 1, i + k / 2 + 1, i + k / 2 + 2})
      if (std::find(men[i].begin(), men[i].end(), mod(v)) == men[i].end()) men[i].push_back(mod(v));
  }
  if (k < 6) {
    for (auto &l : men)
      for (int w = 0; w < k; ++w)
        if (std::find(l.begin(), l.end(), w) == l.end()) l.push_back(w);
    for (auto &l : women) l.assign(k, -1);
    for (int m = 0; m < k; ++m)
      for (int l = 0; l < k; ++l) women[men[m][l]][k - 1 - l] = m;
  } else {
    for (int i = 0; i < k; ++i)
      women[i] = {mod(i - k / 2 - 2), mod(i - k / 2 - 1), mod(i - 1), i};
  }
  return MarriageInstance::make(k, men, women);
}

inline MarriageInstance random_instance(int k, std::uint64_t seed) {
  if (k <= 0) throw InvalidArgument("k must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> men(k), women(k);
  for (auto *side : {&men, &women})
    for (auto &l : *side) {
      l.resize(k);
      std::iota(l.begin(), l.end(), 0);
      std::shuffle(l.begin(), l.end(), rng);
    }
  return MarriageInstance::make(k, men, women);
}

inline const std::vector<std::string> &fixture_names() {
  static const std::vector<std::string> names{"example_5_1", "example_8_3", "table_8_2"};
  return names;
}

inline MarriageInstance fixture(const std::string &name) {
  if (name == "example_5_1") return MarriageInstance::make(2, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
  if (name == "example_8_3")
    return MarriageInstance::make(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
  if (name == "table_8_2")
    return MarriageInstance::make(
        10,
        {{0, 1, 6, 7}, {1, 2, 7, 8}, {2, 3, 8, 9}, {3, 4, 9, 0}, {4, 5, 0, 1},
         {5, 6, 1, 2}, {6, 7, 2, 3}, {7, 8, 3, 4}, {8, 9, 4, 5}, {9, 0, 5, 6}},
        {{3, 4, 9, 0}, {4, 5, 0, 1}, {5, 6, 1, 2}, {6, 7, 2, 3}, {7, 8, 3, 4},
         {8, 9, 4, 5}, {9, 0, 5, 6}, {0, 1, 6, 7}, {1, 2, 7, 8}, {2, 3, 8, 9}});
  throw InvalidArgument("unknown fixture " + name);
}

enum class Family { irving_leather, random, fixture };

inline MarriageInstance generate_family(Family kind, int k, std::uint64_t seed = 0,
                                        const std::string &name = {}) {
  switch (kind) {
  case Family::irving_leather: return irving_leather(k);
  case Family::random: return random_instance(k, seed);
  case Family::fixture: return fixture(name);
  }
  throw InvalidArgument("unknown family");
}

} // namespace scarf
