// One pass/fail line per acceptance criterion. Run with no arguments for the
// whole suite, or with a single number to run one criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "poro/counterexample.hpp"
#include "poro/dimension.hpp"
#include "poro/porosity.hpp"
#include "poro/theorem.hpp"

using namespace poro;

namespace {

char detail[512];

bool criterion1() {
  // 1e5 random instances of the one-step mass inequality, zero violations
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int violations = 0;
  for (int t = 0; t < 100000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 32);
    std::vector<double> masses(n);
    for (double& x : masses) x = unif(rng);
    const double D = 0.05 + 1.95 * unif(rng);
    const double tau = D * (0.01 + 0.98 * unif(rng));
    const double r = std::exp2(-1.0 - 39.0 * unif(rng));
    if (!holder_step(masses, r, tau, D).holds) ++violations;
  }
  std::snprintf(detail, sizeof detail, "%d violations in 100000 instances", violations);
  return violations == 0;
}

bool criterion2() {
  // tree DP vs exhaustive enumeration of covering antichains, depth 3
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::vector<double>> rows;
    for (int lv = 0; lv < 3; ++lv) {
      const double q = unif(rng);
      rows.push_back({q, 1.0 - q});
    }
    const auto m = CascadeMeasure::custom(1, rows, 4);
    const double D = 0.3 + unif(rng);
    const double tau = D * unif(rng);
    const double e = 1.0 - tau / D;

    // node bits: depth 1 -> 0..1, depth 2 -> 2..5, depth 3 -> 6..13
    auto bit = [](int d, int n) { return d == 1 ? n : d == 2 ? 2 + n : 6 + n; };
    double best = -1.0;
    for (int mask = 0; mask < (1 << 14); ++mask) {
      bool ok = true;
      for (int leaf = 0; leaf < 8 && ok; ++leaf) {
        const int hits = ((mask >> bit(3, leaf)) & 1) + ((mask >> bit(2, leaf >> 1)) & 1) +
                         ((mask >> bit(1, leaf >> 2)) & 1);
        ok = hits == 1;
      }
      if (!ok) continue;
      double sum = 0.0;
      for (int d = 1; d <= 3; ++d)
        for (int n = 0; n < (1 << d); ++n)
          if ((mask >> bit(d, n)) & 1)
            sum += std::exp2(-static_cast<double>(d) * tau) *
                   std::pow(m.mass_of_cell(d, n), e);
      best = std::max(best, sum);
    }

    const double tree = dimension_certificate_tree(m, D, tau, 1, 3, false).best_cover_sum;
    const double dp = dimension_certificate(m, D, tau, 1, 3).best_cover_sum;
    if (std::abs(tree - best) > 1e-12 * std::max(1.0, best)) ++mismatches;
    if (std::abs(dp - best) > 1e-12 * std::max(1.0, best)) ++mismatches;
  }
  std::snprintf(detail, sizeof detail, "%d mismatches in 1000 instances", mismatches);
  return mismatches == 0;
}

bool criterion3() {
  const auto m = CascadeMeasure::bernoulli(0.25, 30);
  std::string log;
  bool ok = true;
  for (double D : {0.87, 0.95, 1.0}) {
    const auto v = dimension_certificate(m, D, D / 2.0, 1, 30).verdict;
    const bool good = v == CertificateVerdict::certified;
    ok = ok && good;
    log += " D=" + std::to_string(D).substr(0, 4) + (good ? ":certified" : ":NOT-certified");
  }
  for (double D : {0.70, 0.76}) {
    const auto v = dimension_certificate(m, D, D / 2.0, 1, 30).verdict;
    const bool good = v == CertificateVerdict::refuted_at_depth;
    ok = ok && good;
    log += " D=" + std::to_string(D).substr(0, 4) + (good ? ":refuted" : ":NOT-refuted");
  }
  std::snprintf(detail, sizeof detail, "%s", log.c_str());
  return ok;
}

bool criterion4() {
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const double u = std::exp2(-5.1 - 0.2 * i);
    const double alpha = 0.5 * (1.0 - u);
    const auto tc = constants(1, alpha);
    const double t = (1.0 - 2.0 * alpha) * std::exp2(tc.l);
    if (!(std::exp2(-tc.k - 1) <= t && t < std::exp2(-tc.k))) ++bad;
    if (std::exp2(-tc.k) <= t && t < std::exp2(-tc.k + 1)) ++bad;
    if (std::exp2(-tc.k - 2) <= t && t < std::exp2(-tc.k - 1)) ++bad;

    for (int n : {2, 5}) {
      const double e0 = epsilon0(tc, 0.8, n);
      const double target = (5.0 / 18.0) * std::pow(tc.C, -0.5) * std::exp2(0.5 * tc.k);
      if (std::abs(epsilon_response(tc, 0.8, n, e0) - target) > 1e-12 * target) ++bad;
    }

    const double D0 = dim_bound(1, 0.5, alpha).D0;
    const auto g = porosity_gain(tc, 0.5, D0 + 0.5);
    const double need = tc.k - std::log2(tc.C);
    if (!(g.K > 1.0)) ++bad;
    if (!(tc.k * g.delta * (D0 + 0.5) * g.n > need)) ++bad;
    // n = 1 has no predecessor among positive step counts
    if (g.n >= 2 && tc.k * g.delta * (D0 + 0.5) * (g.n - 1) > need) ++bad;
  }
  std::snprintf(detail, sizeof detail, "%d failed checks over 50 alphas", bad);
  return bad == 0;
}

bool criterion5() {
  const double alphas[] = {0.5 - 3.0 * std::ldexp(1.0, -9),  // k = 4
                           0.5 - std::ldexp(1.0, -10)};      // k = 6
  int instances = 0, failures = 0;
  for (const char* mk : {"lebesgue", "bernoulli", "counterexample"}) {
    const CascadeMeasure m = std::string(mk) == "lebesgue"
                                 ? CascadeMeasure::bernoulli(0.5, 40)
                                 : std::string(mk) == "bernoulli"
                                       ? CascadeMeasure::bernoulli(0.25, 40)
                                       : CascadeMeasure::counterexample(std::exp(1.0), 40);
    for (double alpha : alphas) {
      const auto tc = constants(1, alpha);
      const double D = dim_bound(1, 0.5, alpha).D0 + 0.1;
      for (int n : {2, 3}) {
        const double eps = epsilon0(tc, D, n) / 2.0;
        for (int base : {0, 1}) {
          const CubeIndex q = base == 0 ? CubeIndex(tc.k, 1) : CubeIndex(tc.k, 1, {0});
          const auto res = verify_claim1(m, tc, D, eps, q, n, 6);
          ++instances;
          if (!res.holds) ++failures;
        }
      }
    }
  }
  std::snprintf(detail, sizeof detail, "%d failures in %d instances", failures, instances);
  return instances >= 20 && failures == 0;
}

bool criterion6() {
  std::string log;
  bool ok = true;
  for (int k = 4; k <= 8; ++k) {
    const auto m = CascadeMeasure::comb(k, {0, (1 << k) - 1}, 300);
    const double est = packing_dimension_estimate(m, 100, 250, 9).estimate;
    const double alpha = 0.5 - std::exp2(-(k + 2.0));
    const double bound = dim_bound(1, 1.0, alpha).bound;
    const double ratio = bound / est;
    const bool good = est <= bound + 1e-15 && ratio >= 1.0 && ratio <= 12.0;
    ok = ok && good;
    char buf[64];
    std::snprintf(buf, sizeof buf, " k=%d:ratio=%.2f%s", k, ratio, good ? "" : "(out)");
    log += buf;
  }
  std::snprintf(detail, sizeof detail, "%s", log.c_str());
  return ok;
}

bool criterion7() {
  // exact density by independent enumeration
  const PorousScaleSet ps{1, 2, 1};
  const ScaleList sl = porous_scales(ps, 924);
  long long manual = 0;
  for (long long s = 1; s < 924; ++s)
    if (ps.contains(s)) ++manual;
  const bool density_ok = manual == 380 &&
                          static_cast<long long>(sl.scales.size()) == manual &&
                          sl.density == 380.0 / 924.0;

  // engine flags on survivor points at the analytic porous scales
  const auto A = DyadicSet::example(1, 2, 1, 4, 32);
  const auto& leaves = A.survivors_at(32);
  std::vector<long long> scales;
  for (long long s = 1; s <= 27; ++s)
    if (ps.contains(s)) scales.push_back(s);
  const std::size_t stride = std::max<std::size_t>(1, leaves.size() / 50);
  long long pairs = 0, agree = 0;
  for (std::size_t i = 0; i < leaves.size(); i += stride) {
    const double x = std::ldexp(static_cast<double>(leaves[i]), -32);
    for (long long j : scales) {
      double slack = 0.0;
      const double v = por_set(A, x, std::exp2(-static_cast<double>(j)), 30, &slack);
      ++pairs;
      if (v >= 0.25 - slack) ++agree;
    }
  }
  const double frac = static_cast<double>(agree) / static_cast<double>(pairs);
  std::snprintf(detail, sizeof detail,
                "density %lld/924 %s; engine agreement %lld/%lld = %.3f", manual,
                density_ok ? "exact" : "WRONG", agree, pairs, frac);
  return density_ok && frac >= 0.95;
}

bool criterion8() {
  const auto mu = CascadeMeasure::counterexample(std::exp(1.0), 45);
  double medians[3] = {0, 0, 0};
  const int depths[3] = {10, 20, 30};
  for (int di = 0; di < 3; ++di) {
    const int depth = depths[di];
    std::vector<double> fr(200);
    for (int s = 0; s < 200; ++s) {
      const SamplePath sp = mu.sample_point(4, depth + 10, s);
      const PorosityProfile p = porosity_profile(mu, sp.value, 0.01, depth, 0, 1, 8);
      fr[s] = mean_porosity_fraction(p, 0.4, depth).fraction;
    }
    std::sort(fr.begin(), fr.end());
    medians[di] = fr[100];
  }
  const bool ok = medians[2] >= 0.8 && medians[0] <= medians[1] && medians[1] <= medians[2];
  std::snprintf(detail, sizeof detail, "medians %.3f %.3f %.3f at depths 10 20 30",
                medians[0], medians[1], medians[2]);
  return ok;
}

bool criterion9() {
  const auto mu = CascadeMeasure::counterexample(std::exp(1.0), 40);
  const auto E = DyadicSet::even_digits_zero(40);
  double closed = 1.0;
  for (int j = 2; j <= 40; j += 2) closed *= 1.0 - 1.0 / std::log(j + 2.0);
  const double mass = measure_of_set_approx(mu, E, 40);
  bool ok = mass < 0.01 && std::abs(mass - closed) <= 1e-10;

  const EtaWeights eta(&E, 2, 1, std::exp(1.0));
  double worst_sum = 0.0;
  for (int i = 1; i <= 8; ++i) {
    const auto ws = weighted_sum_check(eta, mu, i);
    worst_sum = std::max(worst_sum, ws.sum);
    ok = ok && ws.holds;
  }

  const auto& chains = E.survivors_at(24);
  const std::size_t stride = std::max<std::size_t>(1, chains.size() / 64);
  const double cb = c_bound(8, 2, 1, 1.0, std::exp(1.0));
  for (std::size_t s = 0; s < chains.size(); s += stride)
    ok = ok && eta.eta_product(8, chains[s]) <= cb * (1.0 + 1e-12);

  std::snprintf(detail, sizeof detail, "mass %.3e (closed %.3e), worst block sum %.6f",
                mass, closed, worst_sum);
  return ok;
}

bool criterion10() {
  const auto mu = CascadeMeasure::counterexample(std::exp(1.0), 1000000);
  int smaller = 0;
  double mean_deep = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    const double shallow = digit_equal_fraction(mu, 1000, 1, seed);
    const double deep = digit_equal_fraction(mu, 1000000, 1, seed);
    if (deep < shallow) ++smaller;
    mean_deep += deep;
  }
  mean_deep /= 100.0;
  const double expected = digit_equal_expected(mu, 1000000);
  const bool ok = std::abs(mean_deep - expected) <= 0.01 && smaller >= 95;
  std::snprintf(detail, sizeof detail,
                "mean %.5f vs expected %.5f; smaller at depth 1e6 for %d/100 seeds",
                mean_deep, expected, smaller);
  return ok;
}

struct Criterion {
  bool (*run)();
  double budget_s;
};

const Criterion kCriteria[] = {
    {criterion1, 10},  {criterion2, 10},  {criterion3, 60},  {criterion4, 1},
    {criterion5, 300}, {criterion6, 120}, {criterion7, 300}, {criterion8, 600},
    {criterion9, 120}, {criterion10, 120},
};

}  // namespace

int main(int argc, char** argv) {
  int lo = 1, hi = 10;
  if (argc > 1) {
    lo = hi = std::atoi(argv[1]);
    if (lo < 1 || lo > 10) {
      std::fprintf(stderr, "usage: %s [1-10]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0;
  for (int i = lo; i <= hi; ++i) {
    const auto& c = kCriteria[i - 1];
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    detail[0] = '\0';
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      std::snprintf(detail, sizeof detail, "exception: %s", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      pass = false;
      std::printf("[criterion %d] FAIL (over budget: %.1fs > %.0fs; %s)\n", i, secs,
                  c.budget_s, detail);
    } else {
      std::printf("[criterion %d] %s (%s; %.1fs)\n", i, pass ? "PASS" : "FAIL", detail,
                  secs);
    }
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  return failed;
}
