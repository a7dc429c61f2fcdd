#include <chrono>
#include <cstdio>

#include "poro/dimension.hpp"
#include "poro/porosity.hpp"
#include "poro/theorem.hpp"

using clk = std::chrono::steady_clock;

static double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main() {
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "parallel[s]", "speedup");

  {
    const auto m = poro::CascadeMeasure::bernoulli(0.25, 4000);
    const auto t0 = clk::now();
    const auto s = poro::packing_dimension_estimate_serial(m, 2000, 4000, 7);
    const auto t1 = clk::now();
    const auto p = poro::packing_dimension_estimate(m, 2000, 4000, 7);
    const auto t2 = clk::now();
    if (s.estimate != p.estimate) std::printf("MISMATCH in packing estimate\n");
    std::printf("%-28s %10.3f %10.3f %8.2f\n", "packing_dimension_estimate",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2));
  }

  {
    const auto m = poro::CascadeMeasure::bernoulli(0.25, 64);
    const auto tc = poro::constants(1, 0.5 * (1.0 - 1.0 / 512.0));
    const double D = poro::dim_bound(1, 0.5, tc.alpha).D0 + 0.1;
    const double eps = poro::epsilon0(tc, D, 2) / 2.0;
    const poro::CubeIndex q(tc.k, 1);
    const auto t0 = clk::now();
    const auto s = poro::verify_claim1(m, tc, D, eps, q, 3, 6, false);
    const auto t1 = clk::now();
    const auto p = poro::verify_claim1(m, tc, D, eps, q, 3, 6, true);
    const auto t2 = clk::now();
    if (s.lhs != p.lhs) std::printf("MISMATCH in claim1 lhs\n");
    std::printf("%-28s %10.3f %10.3f %8.2f\n", "verify_claim1 k=6 n=3",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2));
  }

  {
    const auto m = poro::CascadeMeasure::bernoulli(0.3, 64);
    const auto t0 = clk::now();
    const auto s = poro::dimension_certificate_tree(m, 0.95, 0.475, 1, 20, false);
    const auto t1 = clk::now();
    const auto p = poro::dimension_certificate_tree(m, 0.95, 0.475, 1, 20, true);
    const auto t2 = clk::now();
    if (s.best_cover_sum != p.best_cover_sum) std::printf("MISMATCH in tree certificate\n");
    std::printf("%-28s %10.3f %10.3f %8.2f\n", "certificate_tree depth=20",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2));
  }

  return 0;
}
