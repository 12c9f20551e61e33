#pragma once

#include "scarf/marriage.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace scarf {

/// Polynomial in an infinitesimal eps, ordered lexicographically by the
/// coefficients of eps^0, eps^1, ...
class EpsilonValue {
public:
  EpsilonValue() = default;
  EpsilonValue(const Rational &c) { // NOLINT: implicit on purpose, constants embed
    if (c != 0) c_.push_back(c);
  }
  EpsilonValue(int c) : EpsilonValue(Rational(c)) {} // NOLINT

  static EpsilonValue monomial(int degree, const Rational &coeff = 1) {
    EpsilonValue v;
    if (coeff != 0) {
      v.c_.assign(degree + 1, Rational(0));
      v.c_[degree] = coeff;
    }
    return v;
  }

  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(int d) const { return d < static_cast<int>(c_.size()) ? c_[d] : Rational(0); }
  Rational constant() const { return coeff(0); }
  bool is_zero() const { return c_.empty(); }

  EpsilonValue &operator+=(const EpsilonValue &o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t d = 0; d < o.c_.size(); ++d) c_[d] += o.c_[d];
    trim();
    return *this;
  }
  EpsilonValue &operator-=(const EpsilonValue &o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t d = 0; d < o.c_.size(); ++d) c_[d] -= o.c_[d];
    trim();
    return *this;
  }
  EpsilonValue &operator*=(const Rational &r) {
    if (r == 0) c_.clear();
    for (auto &x : c_) x *= r;
    return *this;
  }
  EpsilonValue &operator/=(const Rational &r) {
    if (r == 0) throw InvalidArgument("division by zero");
    for (auto &x : c_) x /= r;
    return *this;
  }
  friend EpsilonValue operator+(EpsilonValue a, const EpsilonValue &b) { return a += b; }
  friend EpsilonValue operator-(EpsilonValue a, const EpsilonValue &b) { return a -= b; }
  friend EpsilonValue operator-(EpsilonValue a) { return a *= Rational(-1); }
  friend EpsilonValue operator*(const Rational &r, EpsilonValue a) { return a *= r; }
  friend EpsilonValue operator*(EpsilonValue a, const Rational &r) { return a *= r; }
  friend EpsilonValue operator/(EpsilonValue a, const Rational &r) { return a /= r; }

  friend bool operator==(const EpsilonValue &a, const EpsilonValue &b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const EpsilonValue &a, const EpsilonValue &b) {
    const std::size_t len = std::max(a.c_.size(), b.c_.size());
    for (std::size_t d = 0; d < len; ++d) {
      const Rational x = a.coeff(static_cast<int>(d)), y = b.coeff(static_cast<int>(d));
      if (x < y) return std::strong_ordering::less;
      if (x > y) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  Rational evaluate(const Rational &eps) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * eps + *it;
    return acc;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t d = 0; d < c_.size(); ++d) {
      if (c_[d] == 0) continue;
      if (!s.empty()) s += c_[d] < 0 ? " - " : " + ";
      else if (c_[d] < 0) s += "-";
      const Rational mag = abs(c_[d]);
      if (d == 0) s += mag.str();
      else {
        if (mag != 1) s += mag.str() + "*";
        s += "e^" + std::to_string(d);
      }
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Perturbation part of the right-hand side: eps^(k+1..2k) for men, eps^(1..k) for women.
inline std::vector<EpsilonValue> perturbation(int k) {
  std::vector<EpsilonValue> p;
  for (int i = 0; i < k; ++i) p.push_back(EpsilonValue::monomial(k + 1 + i));
  for (int j = 0; j < k; ++j) p.push_back(EpsilonValue::monomial(1 + j));
  return p;
}

/// b + b(eps).
inline std::vector<EpsilonValue> perturbed_rhs(int k) {
  auto p = perturbation(k);
  for (auto &v : p) v += EpsilonValue(1);
  return p;
}

/// Revised-simplex engine over b + b(eps) with a dense exact basis inverse.
class PerturbedCardinal {
public:
  PerturbedCardinal(const StandardFormSystem &sys, std::vector<EpsilonValue> rhs)
      : sys_(&sys), n_(sys.n()), in_b_(sys.cols(), 0) {
    if (static_cast<int>(rhs.size()) != n_) throw InvalidArgument("rhs size");
    binv_.assign(n_, std::vector<Rational>(n_, Rational(0)));
    for (int i = 0; i < n_; ++i) {
      if (!(rhs[i] > EpsilonValue(0))) throw InvalidArgument("rhs must be positive");
      cols_.push_back(i);
      in_b_[i] = 1;
      binv_[i][i] = 1;
    }
    xb_ = std::move(rhs);
  }

  const std::vector<int> &columns() const { return cols_; }
  bool contains(int col) const { return in_b_[col] != 0; }
  EpsilonValue value(int col) const {
    for (int p = 0; p < n_; ++p)
      if (cols_[p] == col) return xb_[p];
    return {};
  }
  /// The eps -> 0 limit, i.e. the unperturbed basic value.
  int rounded_value(int col) const { return static_cast<int>(value(col).constant()); }
  std::map<int, EpsilonValue> values() const {
    std::map<int, EpsilonValue> v;
    for (int p = 0; p < n_; ++p) v[cols_[p]] = xb_[p];
    return v;
  }

  /// Pairs handed to the ratio-test comparison, for sampled numeric checks.
  void record_comparisons(bool on) { record_ = on; }
  const std::vector<std::pair<EpsilonValue, EpsilonValue>> &comparisons() const { return compared_; }

  /// The unique min-ratio leaving column. Throws DegenerateTie on a tie.
  std::vector<int> candidates(int entering) {
    if (in_b_[entering]) throw InvalidArgument("entering column already basic");
    direction(entering);
    int best = -1;
    EpsilonValue best_ratio;
    bool tie = false;
    for (int p = 0; p < n_; ++p) {
      if (d_[p] <= 0) continue;
      EpsilonValue r = xb_[p] / d_[p];
      if (best >= 0 && record_) compared_.emplace_back(r, best_ratio);
      if (best < 0 || r < best_ratio) {
        best = p, best_ratio = std::move(r), tie = false;
      } else if (r == best_ratio) {
        tie = true;
      }
    }
    if (best < 0) throw UnboundedDirection(entering);
    if (tie) throw DegenerateTie(steps_);
    entering_ = entering;
    leaving_pos_ = best;
    return {cols_[best]};
  }

  void pivot(int entering, int leaving) {
    if (entering != entering_) candidates(entering);
    if (cols_[leaving_pos_] != leaving) throw InvalidArgument("leaving column is not the candidate");
    const int p = leaving_pos_;
    const Rational piv = d_[p];
    const EpsilonValue theta = xb_[p] / piv;
    for (int j = 0; j < n_; ++j) binv_[p][j] /= piv;
    for (int q = 0; q < n_; ++q) {
      if (q == p || d_[q] == 0) continue;
      for (int j = 0; j < n_; ++j) binv_[q][j] -= d_[q] * binv_[p][j];
      xb_[q] -= d_[q] * theta;
    }
    xb_[p] = theta;
    in_b_[leaving] = 0;
    in_b_[entering] = 1;
    cols_[p] = entering;
    entering_ = -1;
    ++steps_;
    for (int q = 0; q < n_; ++q)
      if (!(xb_[q] > EpsilonValue(0)))
        throw InvariantViolation("perturbed basis has a non-positive basic value");
  }

  /// Basic solution of the current columns in the unperturbed system.
  FeasibleBasis feasible_basis() const { return basic_solution(*sys_, cols_); }

private:
  void direction(int entering) {
    d_.assign(n_, Rational(0));
    for (int i = 0; i < n_; ++i) {
      const Rational &a = sys_->a(i, entering);
      if (a == 0) continue;
      for (int p = 0; p < n_; ++p) d_[p] += binv_[p][i] * a;
    }
  }

  const StandardFormSystem *sys_;
  int n_;
  std::vector<int> cols_;
  std::vector<char> in_b_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<EpsilonValue> xb_;
  std::vector<Rational> d_;
  int entering_ = -1, leaving_pos_ = -1, steps_ = 0;
  bool record_ = false;
  std::vector<std::pair<EpsilonValue, EpsilonValue>> compared_;
};

/// Checks the tree-shape and closed-form claims on one perturbed basis. Throws
/// InvariantViolation naming the first failure.
inline void check_perturbed_basis(const StandardFormSystem &sys, const EdgeIndex &ei,
                                  const std::map<int, EpsilonValue> &x) {
  const int k = ei.k(), n = ei.n();
  const EpsilonValue half(Rational(1, 2)), one(1);
  auto fail = [](const std::string &what) { throw InvariantViolation(what); };
  std::vector<int> cols;
  for (const auto &[j, v] : x) {
    cols.push_back(j);
    if (!(v > EpsilonValue(0))) fail("basic value of column " + std::to_string(j + 1) + " not positive");
    const Rational c = v.constant();
    if (c != 0 && c != 1) fail("constant part outside {0,1}");
    if ((c == 1) != (v > half)) fail("x > 1/2 disagrees with the constant part");
  }
  const FeasibleBasis plain = basic_solution(sys, cols); // throws if infeasible unperturbed
  for (const auto &[j, v] : x)
    if (plain.solution[j] != v.constant()) fail("constant part differs from the unperturbed solution");

  const BasisGraph g = validate_basis_graph(ei, plain);
  const auto b = perturbation(k);
  std::vector<std::vector<int>> adj(n);
  for (int j : cols) {
    const Edge e = ei.edge(j);
    if (!e.loop()) adj[e.a].push_back(j), adj[e.b].push_back(j);
  }
  for (const auto &comp : g.components) {
    const int r = comp.root;
    const bool man_root = ei.is_man(r);
    const Rational loop_c = x.at(comp.loop).constant();
    if (comp.nodes.size() == 1 || man_root) {
      if (loop_c != 1) fail("loop of a man-rooted or singleton tree is not 1");
    } else if (loop_c != 0) {
      fail("loop of a woman-rooted tree is not 0");
    }
    // Root the tree: parent edge per node and DFS order.
    std::map<int, int> parent_edge{{r, comp.loop}};
    std::map<int, int> parent_node{{r, -1}};
    std::vector<int> order{r};
    for (std::size_t h = 0; h < order.size(); ++h) {
      const int v = order[h];
      for (int j : adj[v]) {
        const Edge e = ei.edge(j);
        const int w = e.a == v ? e.b : e.a;
        if (parent_node.count(w)) continue;
        parent_node[w] = v;
        parent_edge[w] = j;
        order.push_back(w);
      }
    }
    std::map<int, EpsilonValue> men_after, women_after;
    std::map<int, int> children;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      (ei.is_man(v) ? men_after : women_after)[v] += b[v];
      const int p = parent_node[v];
      if (p >= 0) {
        men_after[p] += men_after[v];
        women_after[p] += women_after[v];
        ++children[p];
      }
    }
    for (int v : comp.nodes) {
      const int deg = g.degree[v];
      if (!ei.is_man(v) && deg != 1 && deg != 2) fail("woman of degree " + std::to_string(deg));
      if (v != r && children[v] == 0 && !ei.is_man(v)) fail("leaf is a woman");
      if (v == r) continue;
      const EpsilonValue &xv = x.at(parent_edge[v]);
      const EpsilonValue expect = xv.constant() == 1 ? one + men_after[v] - women_after[v]
                                                     : women_after[v] - men_after[v];
      if (xv != expect) fail("closed form fails on column " + std::to_string(parent_edge[v] + 1));
    }
    // Root-to-leaf paths, loop first.
    for (int leaf : comp.nodes) {
      if (children[leaf] != 0) continue;
      std::vector<int> path;
      for (int v = leaf; v >= 0; v = parent_node[v]) path.push_back(parent_edge[v]);
      std::reverse(path.begin(), path.end());
      std::optional<EpsilonValue> last0, last1;
      int last_one = -1;
      for (int t = 0; t < static_cast<int>(path.size()); ++t) {
        const EpsilonValue &v = x.at(path[t]);
        if (v.constant() == 0) {
          if (last0 && !(v < *last0)) fail("0-edges not decreasing along a root path");
          last0 = v;
        } else {
          if (last1 && !(v > *last1)) fail("1-edges not increasing along a root path");
          last1 = v;
          last_one = t;
        }
      }
      for (int t = 0; t < static_cast<int>(path.size()); ++t)
        if ((x.at(path[t]) > one) != (t == last_one)) fail("exceeding 1 is not exactly the last 1-edge");
    }
  }
}

/// Per-iteration record of the rule check done during a perturbed run.
struct Conformance {
  bool ok = true;
  std::string reason;
};

struct PerturbedOptions {
  bool check_claims = true;
  bool check_invariants = default_invariant_checks;
  bool record_comparisons = false;
  long max_iterations = 0; // 0: k^2 + k + 2
};

struct PerturbedResult {
  PivotTrace trace;
  FeasibleBasis basis; // unperturbed values of the final columns
  Matching matching;
  std::vector<Conformance> conformance;
  std::vector<std::pair<EpsilonValue, EpsilonValue>> comparisons;
};

namespace detail {
class PerturbedStrategy {
public:
  PerturbedStrategy(const StandardFormSystem &sys, const EdgeIndex &ei, const PerturbedOptions &opts)
      : sys_(&sys), ei_(&ei), opts_(opts), rule_(ei, opts.check_invariants) {}

  template <class Ctx>
  int choose(const Ctx &ctx) {
    if (opts_.check_claims) check_perturbed_basis(*sys_, *ei_, ctx.B.values());
    sep_ = find_separator(ctx.D, *ei_);
    const int leaving = ctx.candidates.front();
    Conformance c;
    const int sep_loop = sep_.separator - 1;
    const bool woman = ctx.D.row_of(leaving) >= ei_->k();
    if (leaving != sep_loop && !woman) {
      c = {false, "leaving column is neither the separator loop nor woman-disliked"};
    } else if (leaving != sep_loop) {
      const FeasibleBasis plain = basic_solution(*sys_, ctx.B.columns());
      for (const auto &cand : cardinal_pivot_candidates(*sys_, plain, ctx.entering))
        if (cand.leaving == sep_loop) c = {false, "separator loop was available but not taken"};
    }
    conformance.push_back(c);
    return leaving;
  }
  template <class Ctx>
  void annotate(IterationRecord &rec, const Ctx &ctx) {
    rule_.use_separator(sep_);
    rule_.annotate(rec, ctx);
  }
  template <class Ctx>
  void after_ordinal(const Ctx &ctx, const OrdinalPivotResult &res, IterationRecord &rec) {
    rule_.after_ordinal(ctx, res, rec);
  }

  std::vector<Conformance> conformance;

private:
  const StandardFormSystem *sys_;
  const EdgeIndex *ei_;
  PerturbedOptions opts_;
  MarriageStrategy rule_;
  SeparatorState sep_;
};
} // namespace detail

/// Scarf's loop on (A, b + b(eps), C*). Every ratio test must have a unique winner.
inline PerturbedResult perturbed_run(const MarriageInstance &inst, const PerturbedOptions &opts = {}) {
  const EdgeIndex ei(inst);
  const StandardFormSystem sys = build_system(inst);
  const OrdinalMatrix c = build_ordinal_matrix(inst);
  PerturbedCardinal engine(sys, perturbed_rhs(inst.k));
  engine.record_comparisons(opts.record_comparisons);
  detail::PerturbedStrategy strategy(sys, ei, opts);
  RunOptions ro;
  ro.max_iterations = opts.max_iterations > 0 ? opts.max_iterations : default_iteration_cap(inst.k);
  RunResult rr = run(c, engine, strategy, ro);
  if (opts.check_claims) check_perturbed_basis(sys, ei, engine.values());
  PerturbedResult out;
  out.matching = matching_from_basis(ei, rr.basis);
  out.trace = std::move(rr.trace);
  out.basis = std::move(rr.basis);
  out.conformance = std::move(strategy.conformance);
  out.comparisons = engine.comparisons();
  return out;
}

struct ComparisonReport {
  bool conforming = true;          // every perturbed choice follows the rule
  int first_nonconforming = -1;
  std::string reason;
  bool sequences_equal = true;     // informational: same Scarf pairs under our tie-break
  int first_divergence = -1;
  int unperturbed_iterations = 0;
  int perturbed_iterations = 0;
  Matching unperturbed;
  Matching perturbed;
};

inline ComparisonReport compare_sequences(const MarriageInstance &inst) {
  ComparisonReport rep;
  const SolveResult plain = solve(inst);
  const PerturbedResult pert = perturbed_run(inst);
  rep.unperturbed = plain.matching;
  rep.perturbed = pert.matching;
  rep.unperturbed_iterations = plain.iterations();
  rep.perturbed_iterations = static_cast<int>(pert.trace.iterations.size());
  for (std::size_t t = 0; t < pert.conformance.size(); ++t)
    if (!pert.conformance[t].ok) {
      rep.conforming = false;
      rep.first_nonconforming = static_cast<int>(t);
      rep.reason = pert.conformance[t].reason;
      break;
    }
  const auto &a = plain.trace.iterations, &b = pert.trace.iterations;
  for (std::size_t t = 0; t < std::max(a.size(), b.size()); ++t) {
    if (t >= a.size() || t >= b.size() || a[t].B != b[t].B || a[t].D != b[t].D) {
      rep.sequences_equal = false;
      rep.first_divergence = static_cast<int>(t);
      break;
    }
  }
  if (rep.sequences_equal && plain.trace.final_basis != pert.trace.final_basis) {
    rep.sequences_equal = false;
    rep.first_divergence = static_cast<int>(a.size());
  }
  return rep;
}

} // namespace scarf
