#pragma once

#include "scarf/ordinal.hpp"
#include "scarf/polytope.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace scarf {

enum class Phase { none, L, M };

/// One cardinal + ordinal step. B, D and utility describe the Scarf pair the step
/// starts from. `ordinal` is empty when column 1 left B (the run ends there).
struct IterationRecord {
  int iteration = 0;
  std::vector<int> B;
  std::vector<int> D;
  int entering = -1;
  std::vector<int> candidates;
  int leaving = -1;
  std::optional<OrdinalPivotResult> ordinal;
  std::vector<std::int64_t> utility;
  Phase phase = Phase::none;
  int separator = 0; // 1-based man index, 0 outside marriage runs
  std::pair<std::int64_t, std::int64_t> potential{0, 0};

  bool operator==(const IterationRecord &) const = default;
};

struct PivotTrace {
  std::vector<IterationRecord> iterations;
  std::vector<int> final_basis;
  std::vector<std::int64_t> final_utility;

  bool operator==(const PivotTrace &) const = default;
};

struct ScarfPair {
  FeasibleBasis B;
  OrdinalBasis D;
};

/// Index of the column k > n maximising c(0, k); the extra column of D_0.
inline int initial_column(const OrdinalMatrix &c) {
  if (c.m() == 0) throw InvalidArgument("no non-slack column to start from");
  int best = c.n();
  for (int k = c.n(); k < c.cols(); ++k)
    if (c(0, k) > c(0, best)) best = k;
  return best;
}

inline std::vector<int> initial_ordinal_columns(const OrdinalMatrix &c) {
  std::vector<int> d{initial_column(c)};
  for (int i = 1; i < c.n(); ++i) d.push_back(i);
  return d;
}

inline ScarfPair initialize(const StandardFormSystem &sys, const OrdinalMatrix &c) {
  if (sys.n() != c.n() || sys.m() != c.m()) throw InvalidArgument("system and ordinal matrix differ in shape");
  std::vector<int> b(sys.n());
  for (int i = 0; i < sys.n(); ++i) b[i] = i;
  return {basic_solution(sys, b), compute_utility(c, initial_ordinal_columns(c))};
}

struct RunOptions {
  long max_iterations = 0; // 0: caller's default
  bool record_sets = true; // copy B and D into every record
  bool count_ordinal_candidates = true;
};

/// What a strategy sees when asked for the leaving column.
template <class Cardinal>
struct PivotContext {
  const OrdinalMatrix &C;
  const OrdinalState &D;
  const Cardinal &B;
  int iteration;
  int entering;
  const std::vector<int> &candidates;
};

struct RunResult {
  PivotTrace trace;
  FeasibleBasis basis;
};

/// Scarf's loop. `cardinal` must start at the slack basis {0..n-1}; it provides
///   candidates(entering) -> sorted leaving columns,
///   pivot(entering, leaving), columns(), feasible_basis().
/// `strategy.choose(ctx)` picks a leaving column; optional hooks
/// `annotate(record, ctx)` and `after_ordinal(ctx, result, record)` run each iteration.
/// Records are appended to `out.trace` as they complete, so a caller that catches
/// an exception still holds the partial trace.
template <class Cardinal, class Strategy>
void run_into(const OrdinalMatrix &c, Cardinal &cardinal, Strategy &strategy, const RunOptions &opts,
              RunResult &out) {
  const int n = c.n();
  const long cap = opts.max_iterations > 0 ? opts.max_iterations
                                           : 4L * n * static_cast<long>(c.cols());
  std::vector<char> in_b(c.cols(), 0);
  for (int j : cardinal.columns()) in_b[j] = 1;
  for (int i = 0; i < n; ++i)
    if (!in_b[i]) throw InvalidArgument("cardinal engine must start at the slack basis");

  OrdinalState d(c, initial_ordinal_columns(c));
  d.set_count_candidates(opts.count_ordinal_candidates);
  out = RunResult{};
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  for (int it = 0;; ++it) {
    if (it >= cap) throw IterationLimitExceeded(cap);
    int entering = -1;
    for (int j : d.columns())
      if (!in_b[j]) {
        if (entering >= 0) throw InternalError("|D \\ B| > 1");
        entering = j;
      }
    if (entering < 0) throw InternalError("B = D before termination");

    IterationRecord rec;
    rec.iteration = it;
    if (opts.record_sets) {
      rec.B = sorted(cardinal.columns());
      rec.D = d.sorted_columns();
    }
    rec.utility = d.utility_vector();
    rec.entering = entering;
    rec.candidates = cardinal.candidates(entering);
    PivotContext<Cardinal> ctx{c, d, cardinal, it, entering, rec.candidates};
    rec.leaving = strategy.choose(ctx);
    if (!std::binary_search(rec.candidates.begin(), rec.candidates.end(), rec.leaving))
      throw InternalError("strategy picked a non-candidate");
    if constexpr (requires { strategy.annotate(rec, ctx); }) strategy.annotate(rec, ctx);

    cardinal.pivot(entering, rec.leaving);
    in_b[rec.leaving] = 0;
    in_b[entering] = 1;
    if (rec.leaving == 0) {
      out.trace.iterations.push_back(std::move(rec));
      break;
    }
    const OrdinalPivotResult res = d.pivot(rec.leaving);
    rec.ordinal = res;
    if constexpr (requires { strategy.after_ordinal(ctx, res, rec); })
      strategy.after_ordinal(ctx, res, rec);
    out.trace.iterations.push_back(std::move(rec));
    if (res.entering == 0) break;
  }

  out.trace.final_basis = d.sorted_columns();
  out.trace.final_utility = d.utility_vector();
  if (sorted(cardinal.columns()) != out.trace.final_basis)
    throw InternalError("run ended with B != D");
  out.basis = cardinal.feasible_basis();
}

template <class Cardinal, class Strategy>
RunResult run(const OrdinalMatrix &c, Cardinal &cardinal, Strategy &strategy, const RunOptions &opts) {
  RunResult out;
  run_into(c, cardinal, strategy, opts, out);
  return out;
}

/// Cardinal engine for arbitrary standard-form systems: exact elimination per step.
class GenericCardinal {
public:
  explicit GenericCardinal(const StandardFormSystem &sys) : sys_(&sys) {
    std::vector<int> b(sys.n());
    for (int i = 0; i < sys.n(); ++i) b[i] = i;
    basis_ = basic_solution(sys, b);
  }

  const std::vector<int> &columns() const { return basis_.columns; }
  const FeasibleBasis &feasible_basis() const { return basis_; }

  std::vector<int> candidates(int entering) {
    cached_ = cardinal_pivot_candidates(*sys_, basis_, entering);
    cached_entering_ = entering;
    std::vector<int> out;
    for (const auto &cand : cached_) out.push_back(cand.leaving);
    return out;
  }

  void pivot(int entering, int leaving) {
    if (entering != cached_entering_) candidates(entering);
    for (auto &cand : cached_)
      if (cand.leaving == leaving) {
        basis_ = std::move(cand.result);
        cached_.clear();
        cached_entering_ = -1;
        return;
      }
    throw InvalidArgument("leaving column is not a candidate");
  }

private:
  const StandardFormSystem *sys_;
  FeasibleBasis basis_;
  std::vector<CardinalCandidate> cached_;
  int cached_entering_ = -1;
};

/// Default policy: the smallest candidate column.
struct SmallestColumnStrategy {
  template <class Ctx>
  int choose(const Ctx &ctx) const {
    return ctx.candidates.front();
  }
};

/// Runs the loop on (A, b, C) with the generic engine.
template <class Strategy = SmallestColumnStrategy>
RunResult run(const StandardFormSystem &sys, const OrdinalMatrix &c, Strategy strategy = {},
              RunOptions opts = {}) {
  if (sys.n() != c.n() || sys.m() != c.m()) throw InvalidArgument("system and ordinal matrix differ in shape");
  GenericCardinal engine(sys);
  return run(c, engine, strategy, opts);
}

} // namespace scarf
