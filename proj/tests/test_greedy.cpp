#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "greedylab/examples.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/rng.hpp"
#include "greedylab/system.hpp"

using namespace greedylab;

TEST_CASE("greedy ordering") {
  CHECK(greedy_ordering({0, 0, 0}).perm == std::vector<int>{0, 1, 2});
  // tie |-5| = |5| resolves toward the smaller index
  CHECK(greedy_ordering({3, -5, 5, 1}).perm == std::vector<int>{1, 2, 0, 3});
  auto sys = build_example({ExampleFamily::L1Alpha, 1.0, 2.0, 8});
  CoeffVec pair(sys.size(), 0.0);
  pair[0] = pair[1] = 1.0;
  CHECK(greedy_ordering(pair).perm[0] == 0);
}

TEST_CASE("greedy set and sum") {
  CHECK(greedy_set({4, 3, 1}, 0).empty());
  CHECK(greedy_set({4, 3, 1}, 2) == std::vector<int>{0, 1});
  CHECK(greedy_set({3, -5, 5, 1}, 1) == std::vector<int>{1});
  CHECK_THROWS_AS(greedy_set({1.0, 2.0}, 3), std::invalid_argument);

  CHECK(greedy_sum({4, 3, 1}, 0) == CoeffVec{0, 0, 0});
  auto sys = unit_vector_system(3, NormSpec::lp(1));
  CoeffVec r{4, 3, 1};
  auto g = greedy_sum(r, 2);
  for (int i = 0; i < 3; ++i) r[i] -= g[i];
  CHECK(coeff_norm(sys, r) == 1.0);

  auto ex = build_example({ExampleFamily::L1Alpha, 1.0, 2.0, 8});
  CoeffVec pair(ex.size(), 0.0);
  pair[0] = pair[1] = 1.0;
  CHECK(coeff_norm(ex, greedy_sum(pair, 1)) / coeff_norm(ex, pair) == doctest::Approx(2.5));
}

TEST_CASE("weak thresholding set enumeration") {
  auto sets = enumerate_weak_sets({4, 3, 1}, 2, 0.5);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].indices == std::vector<int>{0, 1});

  auto singletons = enumerate_weak_sets({4, 3, 1}, 1, 0.25);
  REQUIRE(singletons.size() == 3);  // 1 >= 0.25 * 4 is non-strict and holds
  CHECK(singletons[0].indices == std::vector<int>{0});
  CHECK(singletons[1].indices == std::vector<int>{1});
  CHECK(singletons[2].indices == std::vector<int>{2});

  CHECK_THROWS_AS(enumerate_weak_sets({1.0, 2.0}, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_weak_sets({1.0, 2.0}, 1, 0.0), std::invalid_argument);
}

TEST_CASE("weak set structure on random vectors") {
  Rng rng(2024);
  const double taus[] = {1.0, 0.7, 0.3};
  for (int t = 0; t < 300; ++t) {
    CoeffVec c(6);
    for (auto& v : c) v = rng.normal();
    if (t % 3 == 0)
      for (auto& v : c) v = std::round(2.0 * v) / 2.0;
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) c[0] = 1.0;
    int m = rng.uniform_int(1, 6);
    std::vector<std::vector<int>> previous;  // over decreasing tau, families grow
    for (double tau : taus) {
      auto sets = enumerate_weak_sets(c, m, tau);
      CHECK_FALSE(sets.empty());
      auto gs = greedy_set(c, m);
      bool contains_greedy = std::any_of(sets.begin(), sets.end(),
                                         [&](const ThresholdingSet& s) { return s.indices == gs; });
      CHECK(contains_greedy);
      for (const auto& prev : previous) {
        bool found = std::any_of(sets.begin(), sets.end(),
                                 [&](const ThresholdingSet& s) { return s.indices == prev; });
        CHECK(found);
      }
      previous.clear();
      for (const auto& s : sets) previous.push_back(s.indices);
    }
  }
}

TEST_CASE("tau = 1 with distinct moduli pins the greedy set") {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    CoeffVec c(6);
    bool distinct = false;
    while (!distinct) {
      for (auto& v : c) v = rng.normal();
      distinct = true;
      for (int i = 0; i < 6 && distinct; ++i)
        for (int j = i + 1; j < 6; ++j)
          if (std::fabs(std::fabs(c[i]) - std::fabs(c[j])) < 1e-9) {
            distinct = false;
            break;
          }
    }
    int m = rng.uniform_int(1, 5);
    auto sets = enumerate_weak_sets(c, m, 1.0);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].indices == greedy_set(c, m));
  }
}

TEST_CASE("branch active set") {
  CHECK(branch_active_set({4, 3, 1}, 0.5) == std::vector<int>{0, 1});
  CHECK(branch_active_set({4, 3, 1}, 1.0) == std::vector<int>{0});
  CHECK_THROWS_AS(branch_active_set({0, 0}, 0.5), std::invalid_argument);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    CoeffVec c(5);
    for (auto& v : c) v = rng.normal();
    double lambda = rng.sign() * std::pow(10.0, rng.uniform_int(-3, 3));
    CoeffVec scaled(c);
    for (auto& v : scaled) v *= lambda;
    CHECK(branch_active_set(c, 0.4) == branch_active_set(scaled, 0.4));
  }
}

TEST_CASE("branch ordering and sums") {
  const auto& greedy = default_branch_selector();
  const auto& maxidx = max_index_branch_selector();

  CHECK(branch_ordering({4, 3, 1}, 0.5, greedy) == std::vector<int>{0, 1, 2});
  CHECK(branch_ordering({0, 7, 0}, 0.3, greedy) == std::vector<int>{1});
  CHECK(branch_ordering({4, 3, 1}, 0.5, maxidx) == std::vector<int>{1, 0, 2});
  CHECK_THROWS_AS(branch_ordering({0, 0}, 0.5, greedy), std::invalid_argument);

  CHECK(branch_greedy_sum({4, 3, 1}, 0.5, 0, greedy) == CoeffVec{0, 0, 0});
  CHECK(branch_greedy_sum({4, 3, 1}, 0.5, 1, maxidx) == CoeffVec{0, 3, 0});
  CHECK(branch_greedy_sum({0, 0, 0}, 0.5, 2, greedy) == CoeffVec{0, 0, 0});

  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    CoeffVec c(6);
    for (auto& v : c) v = rng.normal();
    int m = rng.uniform_int(0, 6);
    double tau = rng.uniform(0.1, 1.0);
    // the greedy-ordering selector reduces the branch algorithm to the plain one
    CHECK(branch_greedy_sum(c, tau, m, greedy) == greedy_sum(c, m));
    // the full sum reproduces c, and the residual is the tail set exactly
    CHECK(greedy_sum(c, 6) == c);
    auto gs = greedy_set(c, m);
    CoeffVec tail(c);
    for (int i : gs) tail[i] = 0.0;
    CoeffVec residual(c);
    auto gsum = greedy_sum(c, m);
    for (int i = 0; i < 6; ++i) residual[i] -= gsum[i];
    CHECK(residual == tail);
  }
}

TEST_CASE("selector property suite") {
  CHECK(validate_branch_selector(default_branch_selector(), 6, 99).ok());
  CHECK(validate_branch_selector(max_index_branch_selector(), 6, 99).ok());

  BranchSelector bad{"always-first", [](const CoeffVec&, double) { return 0; }};
  auto check = validate_branch_selector(bad, 6, 99);
  CHECK_FALSE(check.ok());
  CHECK_THROWS_AS(register_branch_selector(bad, 6, 99), std::invalid_argument);
  CHECK_THROWS_AS(find_branch_selector("always-first"), std::invalid_argument);

  BranchSelector min_active{"min-active", [](const CoeffVec& c, double tau) {
                              return branch_active_set(c, tau).front();
                            }};
  register_branch_selector(min_active, 6, 99);
  CHECK(find_branch_selector("min-active").id == "min-active");
}

TEST_CASE("permutation equivariance of the greedy set") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    CoeffVec c(6);
    bool distinct = false;
    while (!distinct) {
      for (auto& v : c) v = rng.normal();
      distinct = true;
      for (int i = 0; i < 6 && distinct; ++i)
        for (int j = i + 1; j < 6; ++j)
          if (std::fabs(std::fabs(c[i]) - std::fabs(c[j])) < 1e-9) {
            distinct = false;
            break;
          }
    }
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    for (int i = 5; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    CoeffVec permuted(6);
    for (int i = 0; i < 6; ++i) permuted[i] = c[perm[i]];
    int m = rng.uniform_int(0, 6);
    auto gs_orig = greedy_set(c, m);
    auto gs_perm = greedy_set(permuted, m);
    std::vector<int> transported;
    for (int i = 0; i < 6; ++i)
      if (std::binary_search(gs_orig.begin(), gs_orig.end(), perm[i])) transported.push_back(i);
    CHECK(gs_perm == transported);
  }
}
