#pragma once

#include <cstdint>
#include <vector>

#include "poro/measure.hpp"
#include "poro/sets.hpp"

namespace poro {

// Finite-depth slope record log mu(B)/log r along a digit path, with
// windowed envelopes standing in for limsup/liminf.
struct DimensionEstimate {
  std::vector<double> slopes;  // cumulative, index i-1 for level i
  double limsup = 0.0;         // max windowed mean over the tail [n/2, n]
  double liminf = 0.0;         // min windowed mean over the tail
  int window = 5;
};

struct PackingEstimate {
  double estimate = 0.0;              // lower quantile of per-sample limsups
  std::vector<double> sample_limsup;  // one per sample, in sample order
};

DimensionEstimate local_dimension(const CascadeMeasure& m,
                                  const std::vector<std::uint32_t>& digits, int window = 5);
DimensionEstimate local_dimension(const CascadeMeasure& m, double x, int depth,
                                  int window = 5);

struct PackingOptions {
  double quantile = 0.05;
  int window = 5;
};

// Monte Carlo essential-sup of the local limsup slopes under mu.
// Deterministic for fixed (seed, n_samples) regardless of thread count.
PackingEstimate packing_dimension_estimate(const CascadeMeasure& m, int n_samples, int depth,
                                           std::uint64_t seed, PackingOptions opts = {});
// Single-threaded reference with identical output.
PackingEstimate packing_dimension_estimate_serial(const CascadeMeasure& m, int n_samples,
                                                  int depth, std::uint64_t seed,
                                                  PackingOptions opts = {});

// Covering-count slopes log2 N(g) / g for a finite-depth set.
DimensionEstimate box_dimension(const DyadicSet& A, int window = 5);

// One subdivision step of the Holder-type sum: children masses mu_j at common
// radius r, exponents tau in (0, D).
struct HolderStep {
  double lhs = 0.0;  // sum r^tau mu_j^{1-tau/D}
  double rhs = 0.0;  // N^{tau/D} r^tau (sum mu_j)^{1-tau/D}
  bool holds = false;
};

HolderStep holder_step(const std::vector<double>& masses, double r, double tau, double D);

enum class CertificateVerdict { certified, refuted_at_depth, inconclusive };

struct CertificateResult {
  CertificateVerdict verdict = CertificateVerdict::inconclusive;
  double best_cover_sum = 0.0;  // adversarial max of sum r_Q^tau mu(Q)^{1-tau/D}
  double full_cover_sum = 0.0;  // same sum for the uniform cover at depth_limit
  int depth_limit = 0;
  std::vector<CubeIndex> witness;  // maximizing antichain (tree variant only)
};

// Level-collapsed certificate: exact for cascade measures because the weight
// profile depends on the level only. Covers may not use cubes above i_min.
CertificateResult dimension_certificate(const CascadeMeasure& m, double D, double tau,
                                        int i_min, int depth_limit);
// Explicit tree recursion; returns the maximizing antichain. Reference
// implementation for the collapsed DP, usable only at modest depths.
CertificateResult dimension_certificate_tree(const CascadeMeasure& m, double D, double tau,
                                             int i_min, int depth_limit, bool parallel = true);

}  // namespace poro
