#pragma once

#include <cstdint>
#include <vector>

#include "poro/measure.hpp"
#include "poro/sets.hpp"

namespace poro {

// Per-scale porosity values at one point, for scales r_j = 2^{-k j + t}.
struct PorosityProfile {
  double x = 0.0;
  int arity_log = 1;   // k in the scale family 2^{-kj+t}
  int offset = 0;      // t
  double epsilon = 0.0;  // measure porosity only
  std::vector<int> scale_j;
  std::vector<double> value;
  std::vector<double> slack;
};

struct MeanPorosity {
  double fraction = 0.0;      // #{j <= i : value_j >= alpha - slack_j} / i
  double liminf_proxy = 0.0;  // running minimum of the fraction over [i/2, i]
};

// Largest-empty-subinterval porosity of a set at resolution 2^{-resolution_depth}.
// Guarantee: |result - por(A,x,r)| <= 2^{-resolution_depth}/r.
double por_set(const DyadicSet& A, double x, double r, int resolution_depth,
               double* slack = nullptr);

// Certified lower estimate of por(mu,x,r,eps): the largest grid-ball radius
// whose upper mass bracket is at most eps times the lower bracket of B(x,r).
double por_measure(const CascadeMeasure& m, double x, double r, double eps,
                   int resolution_depth, double* slack = nullptr);

// Flag-only fast path: true iff some grid ball of radius >= alpha*r passes
// the eps-mass test.
bool measure_porous_at(const CascadeMeasure& m, double x, double r, double eps,
                       double alpha, int resolution_depth);

PorosityProfile porosity_profile(const DyadicSet& A, double x, int i_max, int offset,
                                 int arity_log, int resolution_bits);
PorosityProfile porosity_profile(const CascadeMeasure& m, double x, double eps, int i_max,
                                 int offset, int arity_log, int resolution_bits);

MeanPorosity mean_porosity_fraction(const PorosityProfile& p, double alpha, int i);

// For each sampled x ~ mu: the fraction of levels 1..i whose dyadic interval
// around x contains an m-hole of E.
std::vector<double> m_hole_frequency(const DyadicSet& E, int m, const CascadeMeasure& mu,
                                     int n_samples, std::uint64_t seed, int i);

}  // namespace poro
