#include <doctest.h>

#include <cmath>

#include "greedylab/examples.hpp"
#include "greedylab/rng.hpp"
#include "greedylab/system.hpp"

using namespace greedylab;

TEST_CASE("synthesize basics") {
  auto sys = unit_vector_system(3, NormSpec::lp(1));
  CHECK(synthesize(sys, {0, 0, 0}) == AmbientVec{0, 0, 0});
  CHECK(synthesize(sys, {1, 0, 0}) == sys.basis[0]);
  CHECK_THROWS_AS(synthesize(sys, {1, 0}), std::invalid_argument);
}

TEST_CASE("synthesize cancels the shared coordinate in the l1 family") {
  auto sys = build_example({ExampleFamily::L1Alpha, 1.0, 2.0, 8});
  CoeffVec c(sys.size(), 0.0);
  c[0] = c[1] = 1.0;  // x_2 + x_3 in source labels
  AmbientVec v = synthesize(sys, c);
  CHECK(v[0] == 0.0);  // 4 - 4, exactly
  CHECK(v[1] == 1.0);
  CHECK(v[2] == 1.0);
  CHECK(coeff_norm(sys, c) == 2.0);
}

TEST_CASE("project") {
  CoeffVec c{4, 3, 1};
  CHECK(project(c, {}) == CoeffVec{0, 0, 0});
  CHECK(project(c, {0}) == CoeffVec{4, 0, 0});
  CHECK(project(c, {1, 2}) == CoeffVec{0, 3, 1});
  auto sys = unit_vector_system(3, NormSpec::lp(1));
  CoeffVec residual(c);
  auto p = project(c, {1, 2});
  for (int i = 0; i < 3; ++i) residual[i] -= p[i];
  CHECK(coeff_norm(sys, residual) == 4.0);
  CHECK_THROWS_AS(project(c, {3}), std::out_of_range);
}

TEST_CASE("nested projections compose") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    CoeffVec c(6);
    for (auto& v : c) v = rng.normal();
    auto b = rng.subset(6, rng.uniform_int(0, 6));
    std::vector<int> a;
    for (int i : b)
      if (rng.sign() > 0) a.push_back(i);
    CHECK(project(project(c, b), a) == project(c, a));
  }
}

TEST_CASE("dual norm bounds") {
  auto sys = unit_vector_system(4, NormSpec::lp(1));
  std::vector<CoeffVec> corpus;
  for (int i = 0; i < 4; ++i) {
    CoeffVec e(4, 0.0);
    e[i] = 1.0;
    corpus.push_back(e);
  }
  for (int i = 0; i < 4; ++i) {
    auto [lo, hi] = dual_norm_bounds(sys, i, corpus);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(1.0));
  }

  auto ex = build_example({ExampleFamily::L1Alpha, 1.0, 2.0, 8});
  std::vector<CoeffVec> ex_corpus;
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    CoeffVec c(ex.size());
    for (auto& v : c) v = rng.normal();
    ex_corpus.push_back(c);
  }
  auto [lo, hi] = dual_norm_bounds(ex, 0, ex_corpus);
  CHECK(hi == doctest::Approx(1.0));  // ambient linf norm of the coordinate functional
  CHECK(lo <= hi + 1e-9);
  CHECK_THROWS_AS(dual_norm_bounds(ex, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(dual_norm_bounds(ex, 99, ex_corpus), std::out_of_range);
}

TEST_CASE("basis constant bounds") {
  auto l1 = unit_vector_system(5, NormSpec::lp(1));
  std::vector<CoeffVec> corpus;
  Rng rng(9);
  for (int t = 0; t < 60; ++t) {
    CoeffVec c(5);
    for (auto& v : c) v = rng.normal();
    corpus.push_back(c);
  }
  auto [lo, hi] = basis_constant_bounds(l1, corpus);
  CHECK(lo == doctest::Approx(1.0));  // coordinate projections contract l1
  CHECK(hi == doctest::Approx(5.0));  // the crude bound is N

  auto linf = unit_vector_system(5, NormSpec::linf());
  auto [lo2, hi2] = basis_constant_bounds(linf, corpus);
  CHECK(lo2 == doctest::Approx(1.0));
  CHECK(hi2 >= lo2);

  // witness x_2 + x_3 cut after the first system position
  auto ex = build_example({ExampleFamily::L1Alpha, 1.0, 2.0, 6});
  CoeffVec pair(ex.size(), 0.0);
  pair[0] = pair[1] = 1.0;
  auto [lo3, hi3] = basis_constant_bounds(ex, {pair});
  CHECK(lo3 >= 2.5 - 1e-12);
  CHECK(hi3 >= lo3);
}

TEST_CASE("apex extension") {
  auto base = unit_vector_system(2, NormSpec::lp(1));
  auto ext = extend_with_apex(base);
  CHECK(ext.size() == 3);
  CHECK(ext.ambient_dim == 3);
  CHECK(ext.basis[0][2] == 1.0);  // s = max ||e_i|| = 1
  auto v = validate_system(ext);
  CHECK(v.ok());
  CHECK(v.biorth_residual == 0.0);

  auto ex = build_example({ExampleFamily::L1Alpha, 1.0, 2.0, 8});
  auto ext2 = extend_with_apex(ex);
  CHECK(ext2.basis[0][8] == 5.0);  // s = 2 alpha + 3
  CHECK(ext2.labels[0] == 0);
  CHECK(validate_system(ext2).ok());
  double product =
      norm(ext2.norm_spec, ext2.basis[0]) * dual_norm(ext2.norm_spec, ext2.duals[0]);
  CHECK(std::fabs(product - 1.0) <= 1e-12);

  auto weighted = unit_vector_system(3, NormSpec::weighted_lp(2, {1, 2, 3}));
  CHECK_THROWS_AS(extend_with_apex(weighted), std::invalid_argument);
}

TEST_CASE("validate_system flags violations") {
  auto sys = unit_vector_system(4, NormSpec::lp(2));
  auto ok = validate_system(sys);
  CHECK(ok.ok());
  CHECK(ok.biorth_residual == 0.0);

  auto bad = sys;
  bad.duals[1][2] += 1e-3;
  auto flagged = validate_system(bad);
  CHECK_FALSE(flagged.biorth_ok);
  CHECK(flagged.biorth_residual == doctest::Approx(1e-3));

  // sup-norm family: every vector e_i +- e_1 has sup norm exactly 1
  auto c0 = build_example({ExampleFamily::SupNorm, 1.0, 2.0, 9});
  auto rep = validate_system(c0);
  CHECK(rep.ok());
  CHECK(rep.min_basis_norm == 1.0);
  CHECK(rep.max_basis_norm == 1.0);
}

TEST_CASE("rank deficiency detected") {
  std::vector<AmbientVec> rows = {{1, 0, 0}, {1, 1e-12, 0}};
  std::vector<AmbientVec> duals = {{1, 0, 0}, {0, 1, 0}};
  auto sys = make_system(3, NormSpec::lp(2), rows, duals);
  auto rep = validate_system(sys);
  CHECK_FALSE(rep.rank_ok);
}
