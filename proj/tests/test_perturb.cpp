#include "scarf/marriage.hpp"
#include "scarf/perturb.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace scarf;

TEST_CASE("epsilon arithmetic", "[perturb]") {
  const auto e = EpsilonValue::monomial(1);
  const auto e2 = EpsilonValue::monomial(2);
  const EpsilonValue one(1);
  CHECK((one + e).constant() == 1);
  CHECK((one + e).coeff(1) == 1);
  CHECK((one + e - e).degree() == 0);
  CHECK((e - e).is_zero());
  CHECK(((one + e) * Rational(3)).coeff(1) == 3);
  CHECK(((one + e) / Rational(2)).constant() == Rational(1, 2));

  // Low degrees dominate.
  CHECK(e2 < e);
  CHECK(EpsilonValue(0) < e2);
  CHECK(one - e < one);
  CHECK(one - e > one - e - e2);
  CHECK(-e < EpsilonValue(0));
  CHECK(e + e2 > e);
  CHECK(Rational(1, 2) * e < e);
  CHECK(e == EpsilonValue::monomial(1, Rational(1)));
  CHECK((one + e).evaluate(Rational(1, 10)) == Rational(11, 10));
}

TEST_CASE("epsilon order is a total order matching small evaluations", "[perturb]") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 6);
  std::vector<EpsilonValue> vals;
  for (int i = 0; i < 60; ++i) {
    EpsilonValue v;
    for (int t = 0; t < 3; ++t) v += EpsilonValue::monomial(deg(rng), coef(rng));
    vals.push_back(v);
  }
  const Rational eps(1, 15 * 15);
  for (const auto &a : vals)
    for (const auto &b : vals) {
      const auto ab = a <=> b;
      CHECK((b <=> a) == (0 <=> ab));
      if (ab < 0) CHECK(a.evaluate(eps) < b.evaluate(eps));
      if (ab == 0) CHECK(a == b);
      for (const auto &c : vals)
        if (a < b && b < c) CHECK(a < c);
    }
}

TEST_CASE("perturbation vector", "[perturb]") {
  for (int k = 1; k <= 8; ++k) {
    const auto p = perturbation(k);
    REQUIRE(p.size() == static_cast<std::size_t>(2 * k));
    EpsilonValue men;
    for (int i = 0; i < k; ++i) {
      CHECK(p[i] == EpsilonValue::monomial(k + 1 + i));
      men += p[i];
    }
    for (int j = 0; j < k; ++j) {
      CHECK(p[k + j] == EpsilonValue::monomial(1 + j));
      CHECK(men < p[k + j]);
    }
    for (const auto &v : perturbed_rhs(k)) {
      CHECK(v.constant() == 1);
      CHECK(v.degree() <= 2 * k);
    }
  }
}

TEST_CASE("unperturbed right-hand side ties on the first pivot", "[perturb]") {
  const auto inst = random_instance(3, 1);
  const auto sys = build_system(inst);
  PerturbedCardinal engine(sys, std::vector<EpsilonValue>(6, EpsilonValue(1)));
  CHECK_THROWS_AS(engine.candidates(EdgeIndex(inst).column(1, 0)), DegenerateTie);
}

TEST_CASE("k=1 perturbed run", "[perturb]") {
  const auto res = perturbed_run(MarriageInstance::make(1, {{0}}, {{0}}));
  CHECK(res.matching.wife == std::vector<int>{0});
}

TEST_CASE("perturbed runs conform to the marriage rule", "[perturb]") {
  int equal = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int k = 1 + static_cast<int>(seed % 6);
    const auto inst = random_instance(k, seed);
    const auto sys = build_system(inst);
    PerturbedOptions opts;
    opts.record_comparisons = true;
    const auto res = perturbed_run(inst, opts);
    for (const auto &c : res.conformance) CHECK(c.ok);
    CHECK(is_stable(inst, res.matching));
    CHECK(res.trace.iterations.size() <= static_cast<std::size_t>(k * k + k + 2));
    // Every visited column set is a basis of the unperturbed system too.
    for (const auto &rec : res.trace.iterations) {
      CHECK(basis_status(sys, rec.B) == BasisStatus::feasible);
      CHECK(rec.candidates.size() == 1);
    }
    // Sampled numeric agreement of the ratio-test comparisons.
    const Rational eps(1, (4 * k + 1) * (4 * k + 1));
    for (std::size_t t = 0; t < res.comparisons.size(); t += 7) {
      const auto &[a, b] = res.comparisons[t];
      if (a < b) CHECK(a.evaluate(eps) < b.evaluate(eps));
      if (b < a) CHECK(b.evaluate(eps) < a.evaluate(eps));
    }
    const auto rep = compare_sequences(inst);
    CHECK(rep.conforming);
    CHECK(rep.perturbed == rep.unperturbed);
    equal += rep.sequences_equal;
    ++total;
  }
  // Informational: how often the canonical tie-break reproduces the sequence.
  UNSCOPED_INFO("identical sequences: " << equal << " of " << total);
  CHECK(equal > 0);
}

TEST_CASE("perturbed bases keep n positive values", "[perturb]") {
  const auto inst = random_instance(5, 17);
  const auto sys = build_system(inst);
  const EdgeIndex ei(inst);
  const auto res = perturbed_run(inst);
  PerturbedCardinal engine(sys, perturbed_rhs(5));
  for (const auto &rec : res.trace.iterations) {
    const auto x = engine.values();
    CHECK(x.size() == 10u);
    for (const auto &[j, v] : x) CHECK(v > EpsilonValue(0));
    CHECK_NOTHROW(check_perturbed_basis(sys, ei, x));
    engine.pivot(rec.entering, rec.leaving);
  }
}

TEST_CASE("claims checker rejects a broken value map", "[perturb]") {
  const auto inst = random_instance(3, 4);
  const auto sys = build_system(inst);
  const EdgeIndex ei(inst);
  PerturbedCardinal engine(sys, perturbed_rhs(3));
  auto x = engine.values();
  CHECK_NOTHROW(check_perturbed_basis(sys, ei, x));
  x[0] = EpsilonValue(Rational(-1));
  CHECK_THROWS_AS(check_perturbed_basis(sys, ei, x), InvariantViolation);
}
