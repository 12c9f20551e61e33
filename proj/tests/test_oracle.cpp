#include "scarf/marriage.hpp"
#include "scarf/oracle.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace scarf;
using scarf::testing::for_each_subset;
using scarf::testing::stable_by_scan;

// 1-based pairs, as printed.
static Matching from_printed(int k, std::vector<std::pair<int, int>> pairs) {
  for (auto &[m, w] : pairs) --m, --w;
  return Matching::from_pairs(k, pairs);
}

static const Matching mu1 = from_printed(3, {{1, 1}, {2, 2}, {3, 3}});
static const Matching mu2 = from_printed(3, {{1, 2}, {2, 3}, {3, 1}});
static const Matching mu3 = from_printed(3, {{1, 3}, {2, 1}, {3, 2}});

TEST_CASE("deferred acceptance on the three-matching example", "[oracle]") {
  const auto inst = fixture("example_8_3");
  CHECK(gale_shapley(inst, Side::men) == mu1);
  CHECK(gale_shapley(inst, Side::women) == mu3);
}

TEST_CASE("deferred acceptance on small families", "[oracle]") {
  const auto one = MarriageInstance::make(1, {{0}}, {{0}});
  CHECK(gale_shapley(one, Side::men).wife == std::vector<int>{0});
  CHECK(gale_shapley(one, Side::women).wife == std::vector<int>{0});
  for (int k : {2, 4, 6, 8, 10}) {
    const auto mu0 = gale_shapley(irving_leather(k), Side::men);
    for (int i = 0; i < k; ++i) CHECK(mu0.wife[i] == i);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = random_instance(1 + seed % 9, seed);
    CHECK(is_stable(inst, gale_shapley(inst, Side::men)));
    CHECK(is_stable(inst, gale_shapley(inst, Side::women)));
  }
}

TEST_CASE("stability checks", "[oracle]") {
  const auto inst = fixture("example_8_3");
  CHECK(is_stable(inst, mu2));
  const auto one = MarriageInstance::make(1, {{0}}, {{0}});
  const auto bp = blocking_pair(one, Matching(1));
  REQUIRE(bp);
  CHECK(*bp == std::pair{0, 0});

  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const int k = 2 + static_cast<int>(seed % 7);
    const auto r = random_instance(k, seed);
    auto mu = gale_shapley(r, Side::men);
    const int a = static_cast<int>(rng() % k), b = static_cast<int>((a + 1 + rng() % (k - 1)) % k);
    std::swap(mu.wife[a], mu.wife[b]);
    mu.husband[mu.wife[a]] = a;
    mu.husband[mu.wife[b]] = b;
    CHECK(is_stable(r, mu) == stable_by_scan(r, mu.wife));
  }
  Matching broken(3);
  broken.wife[0] = 1;
  CHECK_THROWS_AS(is_stable(inst, broken), MalformedMatching);
}

TEST_CASE("the three-matching example enumerates and classifies", "[oracle]") {
  const auto inst = fixture("example_8_3");
  for (auto method : {EnumerationMethod::brute_force, EnumerationMethod::rotations}) {
    const auto all = enumerate_stable(inst, method);
    REQUIRE(all.size() == 3);
    CHECK(std::find(all.begin(), all.end(), mu1) != all.end());
    CHECK(std::find(all.begin(), all.end(), mu2) != all.end());
    CHECK(std::find(all.begin(), all.end(), mu3) != all.end());
  }
  CHECK(classify(inst, mu2).intermediate());
  CHECK(classify(inst, mu1).optimal_for == std::vector<int>{0, 1, 2});
  CHECK(classify(inst, mu3).optimal_for == std::vector<int>{3, 4, 5});
  Matching unstable = from_printed(3, {{1, 1}, {2, 3}, {3, 2}});
  CHECK_THROWS_AS(classify(inst, unstable), NotStable);
}

TEST_CASE("brute force and rotations agree", "[oracle]") {
  CHECK(enumerate_stable(MarriageInstance::make(1, {{0}}, {{0}})).size() == 1);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto inst = random_instance(1 + seed % 6, seed * 31 + 7);
    const auto all = enumerate_stable(inst, EnumerationMethod::rotations);
    CHECK(all == enumerate_stable(inst, EnumerationMethod::brute_force));
    CHECK(std::is_sorted(all.begin(), all.end()));
    const auto mu0 = gale_shapley(inst, Side::men);
    for (const auto &mu : all) {
      for (int m = 0; m < inst.k; ++m) CHECK_FALSE(inst.man_prefers(m, mu.wife[m], mu0.wife[m]));
      CHECK(stable_by_scan(inst, mu.wife));
    }
  }
}

TEST_CASE("enumeration caps", "[oracle]") {
  CHECK_THROWS_AS(enumerate_stable(random_instance(8, 1), EnumerationMethod::brute_force), TooLarge);
  CHECK_NOTHROW(enumerate_stable(random_instance(7, 1), EnumerationMethod::brute_force));
}

TEST_CASE("rotations of the Irving-Leather family", "[oracle]") {
  for (int k : {6, 8, 10, 12}) {
    const auto inst = irving_leather(k);
    const auto mu0 = gale_shapley(inst, Side::men);
    const auto first = exposed_rotations(inst, mu0);
    REQUIRE(first.size() == 1);
    REQUIRE(first[0].pairs.size() == static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) CHECK(first[0].pairs[i] == std::pair{i, i});

    const auto next = exposed_rotations(inst, eliminate(mu0, first[0]));
    REQUIRE(next.size() == static_cast<std::size_t>(k / 2));
    for (int i = 0; i < k / 2; ++i) {
      const std::vector<std::pair<int, int>> want{{i, (i + 1) % k}, {i + k / 2, (i + k / 2 + 1) % k}};
      CHECK(next[i].pairs == want);
    }
  }
  const auto inst = random_instance(6, 12);
  CHECK(exposed_rotations(inst, gale_shapley(inst, Side::women)).empty());
  CHECK_THROWS_AS(exposed_rotations(fixture("example_8_3"), from_printed(3, {{1, 1}, {2, 3}, {3, 2}})),
                  NotStable);
}

TEST_CASE("Irving-Leather matchings other than the extremes are intermediate", "[oracle]") {
  for (int k : {4, 6}) {
    const auto inst = irving_leather(k);
    const auto all = enumerate_stable(inst);
    CHECK(all.size() >= (std::size_t{1} << (k / 2)));
    const auto mu0 = gale_shapley(inst, Side::men), muz = gale_shapley(inst, Side::women);
    for (const auto &mu : all) {
      const auto c = classify(inst, mu, all);
      CHECK(c.intermediate() == (mu != mu0 && mu != muz));
    }
  }
}

TEST_CASE("solve never returns an intermediate matching", "[oracle]") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_instance(2 + seed % 5, seed + 500);
    const auto mu = solve(inst).matching;
    CHECK_FALSE(classify(inst, mu).intermediate());
  }
  const auto inst = fixture("example_8_3");
  const auto mu = solve(inst).matching;
  CHECK((mu == mu1 || mu == mu3));
}

TEST_CASE("dominating checks", "[oracle]") {
  const auto inst = fixture("example_8_3");
  const auto sys = build_system(inst);
  const auto c = build_ordinal_matrix(inst);
  const EdgeIndex ei(inst);
  CHECK(check_dominating(sys, c, solve(inst).trace.final_basis));
  CHECK_FALSE(check_dominating(sys, c, {0, 1, 2, 3, 4, 5}));
  CHECK_FALSE(check_dominating(sys, c, {0, 1, 2}));
  CHECK_FALSE(check_dominating(sys, c, {0, 0, 1, 2, 3, 4}));
  // Degenerate basis of the intermediate matching: column 8 minimises no row.
  CHECK(basis_status(sys, std::vector<int>{0, 6, 7, 8, 10, 13}) == BasisStatus::feasible);
  CHECK_FALSE(check_dominating(sys, c, {0, 6, 7, 8, 10, 13}));

  // Every basis of the intermediate matching's characteristic vector: n columns
  // holding its edges whose basic solution puts weight 1 on them.
  std::vector<int> edges, rest;
  for (auto [m, w] : mu2.pairs()) edges.push_back(ei.column(m, w));
  for (int j = 0; j < c.cols(); ++j)
    if (std::find(edges.begin(), edges.end(), j) == edges.end()) rest.push_back(j);
  int extensions = 0;
  for_each_subset(static_cast<int>(rest.size()), 3, [&](const std::vector<int> &pick) {
    std::vector<int> cols = edges;
    for (int p : pick) cols.push_back(rest[p]);
    std::sort(cols.begin(), cols.end());
    if (basis_status(sys, cols) != BasisStatus::feasible) return;
    const auto fb = basic_solution(sys, cols);
    if (std::any_of(edges.begin(), edges.end(), [&](int j) { return fb.solution[j] != 1; })) return;
    CHECK_FALSE(check_dominating(sys, c, cols));
    ++extensions;
  });
  CHECK(extensions > 0);

  // The extremes do extend to dominating bases.
  for (const auto &mu : {mu1, mu3}) {
    std::vector<int> base;
    for (auto [m, w] : mu.pairs()) base.push_back(ei.column(m, w));
    bool found = false;
    for_each_subset(c.cols(), 3, [&](const std::vector<int> &pick) {
      std::vector<int> cols = base;
      for (int p : pick)
        if (std::find(cols.begin(), cols.end(), p) == cols.end()) cols.push_back(p);
      if (cols.size() != 6) return;
      std::sort(cols.begin(), cols.end());
      found = found || (check_dominating(sys, c, cols) &&
                        matching_from_basis(ei, basic_solution(sys, cols)) == mu);
    });
    CHECK(found);
  }
}

TEST_CASE("consistency of marriage matrices", "[oracle]") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 5);
    const auto inst = random_instance(k, seed);
    const EdgeIndex ei(inst);
    const auto c = build_ordinal_matrix(inst);
    CHECK(check_consistency(inst, c).consistent);

    // Swap the first two incident edges of man 1.
    auto swapped = c;
    const int a = ei.column(0, inst.men[0][0]), b = ei.column(0, inst.men[0][1]);
    swapped.set(0, a, c(0, b));
    swapped.set(0, b, c(0, a));
    const auto v = check_consistency(inst, swapped);
    CHECK_FALSE(v.consistent);
    CHECK_FALSE(v.witness.empty());

    // Permuting the non-incident edge entries inside each row keeps consistency.
    auto shuffled = c;
    for (int i = 0; i < 2 * k; ++i) {
      std::vector<int> cols;
      for (int j = 2 * k; j < c.cols(); ++j)
        if (!ei.incident(j, i)) cols.push_back(j);
      std::vector<std::int64_t> vals;
      for (int j : cols) vals.push_back(c(i, j));
      std::shuffle(vals.begin(), vals.end(), rng);
      for (std::size_t t = 0; t < cols.size(); ++t) shuffled.set(i, cols[t], vals[t]);
    }
    CHECK_FALSE(validate_ordinal_matrix(shuffled));
    CHECK(check_consistency(inst, shuffled).consistent);
  }
  const auto inst = random_instance(3, 0);
  CHECK_FALSE(check_consistency(inst, build_ordinal_matrix(random_instance(4, 0))).consistent);
}
