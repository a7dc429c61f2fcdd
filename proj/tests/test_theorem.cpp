#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "poro/theorem.hpp"

using namespace poro;
using doctest::Approx;

namespace {

const double kAlpha6 = 0.5 - std::ldexp(1.0, -10);          // k = 6 in d = 1
const double kAlpha10 = 0.5 - 3.0 * std::ldexp(1.0, -15);   // k = 10 in d = 1

}  // namespace

TEST_CASE("constants on pinned inputs") {
  const auto a = constants(1, kAlpha6);
  CHECK(a.l == 2);
  CHECK(a.k == 6);
  CHECK(a.C == 8.0);
  CHECK(a.N == 64);
  CHECK(a.theorem_valid);

  const auto b = constants(1, 31.0 / 64.0);
  CHECK(b.k == 2);
  CHECK(b.C == 8.0);
  CHECK_FALSE(b.theorem_valid);

  const auto c = constants(2, 0.49);
  CHECK(c.l == 3);
  CHECK(c.k == 3);
  CHECK(c.C == 32.0);
  CHECK(c.N == 64);
  CHECK_FALSE(c.theorem_valid);

  const auto d = constants(1, kAlpha6, 100.0);
  CHECK(d.C == 100.0);

  CHECK_THROWS_AS(constants(1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(constants(1, 0.5), std::invalid_argument);
}

TEST_CASE("k satisfies its defining bracket, uniquely") {
  for (int i = 0; i < 50; ++i) {
    const double u = std::exp2(-4.1 - 0.2 * i);
    const double alpha = 0.5 * (1.0 - u);
    if (!(alpha > 15.0 / 32.0)) continue;
    const auto tc = constants(1, alpha);
    const double t = (1.0 - 2.0 * alpha) * std::exp2(tc.l);
    CHECK(std::exp2(-tc.k - 1) <= t);
    CHECK(t < std::exp2(-tc.k));
    CHECK_FALSE((std::exp2(-tc.k) <= t && t < std::exp2(-tc.k + 1)));
    CHECK_FALSE((std::exp2(-tc.k - 2) <= t && t < std::exp2(-tc.k - 1)));
  }
}

TEST_CASE("per-level weights at pinned values") {
  const auto tc = constants(1, kAlpha6);
  CHECK(beta(true, tc, 0.8) == Approx(0.6220220).epsilon(1e-6));
  CHECK(beta(false, tc, 0.8) == Approx(0.2199180).epsilon(1e-6));
  // porous weight shrinks relative to non-porous iff sqrt(C) >= 2^{k/2}
  CHECK(beta(true, tc, 0.8) / beta(false, tc, 0.8) ==
        Approx(std::exp2(0.5 * tc.k) / std::sqrt(tc.C)).epsilon(1e-12));
  CHECK_THROWS_AS(beta(true, tc, 0.0), std::invalid_argument);
}

TEST_CASE("epsilon0 hits the stated response target") {
  const auto tc = constants(1, kAlpha6);
  const double e0 = epsilon0(tc, 0.8, 2);
  CHECK(e0 == Approx(7.377e-5).epsilon(1e-3));
  const double target = (5.0 / 18.0) * std::pow(tc.C, -0.5) * std::exp2(0.5 * tc.k);
  CHECK(std::abs(epsilon_response(tc, 0.8, 2, e0) - target) <= 1e-12 * target);
  // and for a few more n, including one with M > 1
  for (int n : {3, 5, 9}) {
    const double e = epsilon0(tc, 1.9, n);
    CHECK(std::abs(epsilon_response(tc, 1.9, n, e) - target) <= 1e-11 * target);
  }
  CHECK_THROWS_AS(epsilon0(tc, 0.8, 1), std::invalid_argument);
}

TEST_CASE("porosity gain at a pinned instance") {
  const auto tc = constants(1, kAlpha10);
  REQUIRE(tc.k == 10);
  const auto g = porosity_gain(tc, 0.5, 1.2);
  CHECK(g.D0 == Approx(1.1169925).epsilon(1e-7));
  CHECK(g.delta == Approx(0.0309638).epsilon(1e-5));
  CHECK(g.n == 19);
  CHECK(g.K == Approx(1.0209164).epsilon(1e-5));
  CHECK(g.K > 1.0);
  const double need = tc.k - std::log2(tc.C);
  CHECK(tc.k * g.delta * 1.2 * g.n > need);
  CHECK_FALSE(tc.k * g.delta * 1.2 * (g.n - 1) > need);
  CHECK_THROWS_AS(porosity_gain(tc, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(porosity_gain(tc, 1.5, 1.2), std::invalid_argument);
}

TEST_CASE("dimension bound and its vacuity flag") {
  const auto a = dim_bound(1, 1.0, kAlpha10);
  CHECK(a.bound == Approx(0.6169925).epsilon(1e-7));
  CHECK_FALSE(a.vacuous);
  const auto b = dim_bound(1, 0.5, kAlpha10);
  CHECK(b.bound == Approx(1.1169925).epsilon(1e-7));
  CHECK(b.vacuous);
  // a weaker k only loosens the bound
  CHECK(dim_bound(1, 1.0, kAlpha6).bound > a.bound);
}

TEST_CASE("claim1 on lebesgue matches the closed form with no porous cubes") {
  const auto m = CascadeMeasure::bernoulli(0.5, 30);
  const auto tc = constants(1, kAlpha6);
  const double D = 0.8;
  const int i = 1, n = 2;
  // an interior base cube keeps all classification windows inside [0, 1),
  // where the uniform measure leaves no light holes at all
  const auto r = verify_claim1(m, tc, D, 1e-12, CubeIndex(6, 1, {32}), n, 8);
  CHECK(r.porous_cubes == 0);
  CHECK(r.classified_cubes == 64 + 64 * 64);
  CHECK(r.leaves == 4096);
  const double bf = beta(false, tc, D);
  const double leaf_side = std::exp2(-static_cast<double>(tc.k) * (i + n));
  const double oracle = std::pow(bf, n) * 4096.0 * std::pow(leaf_side, 0.5 * D) *
                        std::sqrt(leaf_side);
  CHECK(r.lhs == Approx(oracle).epsilon(1e-11));
  const double base_side = std::exp2(-static_cast<double>(tc.k) * i);
  CHECK(r.rhs == Approx(std::pow(tc.C, -0.5) * std::exp2(3.0) *
                        std::pow(base_side, 0.5 * D) * std::sqrt(base_side))
                     .epsilon(1e-12));
  CHECK(r.holds);
}

TEST_CASE("claim1 holds on skewed cascades, serially and in parallel") {
  const auto tc = constants(1, kAlpha6);
  const double D = 0.8;
  const double eps = epsilon0(tc, D, 2) / 2.0;
  for (const auto& m : {CascadeMeasure::bernoulli(0.25, 30),
                        CascadeMeasure::counterexample(std::exp(1.0), 30)}) {
    const auto a = verify_claim1(m, tc, D, eps, CubeIndex(6, 1), 2, 8, true);
    const auto b = verify_claim1(m, tc, D, eps, CubeIndex(6, 1), 2, 8, false);
    CHECK(a.holds);
    CHECK(a.lhs == b.lhs);
    CHECK(a.porous_cubes == b.porous_cubes);
  }
  // a non-root base cube
  const auto m = CascadeMeasure::bernoulli(0.25, 30);
  const auto c = verify_claim1(m, tc, D, eps, CubeIndex(6, 1, {5}), 2, 8);
  CHECK(c.holds);
  CHECK(c.rhs < 1.0);
}

TEST_CASE("claim1 rejects mismatched instances") {
  const auto m = CascadeMeasure::bernoulli(0.25, 30);
  const auto tc = constants(1, kAlpha6);
  CHECK_THROWS_AS(verify_claim1(m, tc, 0.8, 1e-4, CubeIndex(5, 1), 2, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_claim1(m, tc, 0.8, 1e-4, CubeIndex(6, 1), 7, 8),
                  std::invalid_argument);
  const auto m3 = CascadeMeasure::comb(4, {0, 15}, 10);
  CHECK_THROWS_AS(verify_claim1(m3, tc, 0.8, 1e-4, CubeIndex(6, 1), 2, 8),
                  std::invalid_argument);
}
