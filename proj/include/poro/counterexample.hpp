#pragma once

#include <cstdint>
#include <vector>

#include "poro/measure.hpp"
#include "poro/sets.hpp"

namespace poro {

// Block weights eta(Q) on binary cubes at depths that are multiples of l+m:
// 1 for blocks that are not porous with respect to E, and
// 1 - prod_{t=depth+1}^{depth+l+m} w(t) otherwise, with w(t) = 1/log_b(t+2).
class EtaWeights {
 public:
  EtaWeights(const DyadicSet* E, int l, int m, double log_base);

  int block() const { return l_ + m_; }
  double w(int level) const;  // 1/log_b(level+2)

  // Q is the depth-`depth` cube with line index nb; depth must be a multiple
  // of l+m and leave room for one more block inside E's build depth.
  double eta(int depth, std::uint64_t nb) const;
  // prod_{j=0}^{i-1} eta(Q_j) over the block ancestors of the depth-i(l+m)
  // cube nb.
  double eta_product(int i, std::uint64_t nb) const;

  const DyadicSet& set() const { return *E_; }
  int l() const { return l_; }
  int m() const { return m_; }

 private:
  const DyadicSet* E_;
  int l_;
  int m_;
  double lb_;  // log(log_base)
};

struct WeightedSum {
  double sum = 0.0;
  bool holds = false;  // sum <= 1 + 1e-10
  long long terms = 0;
};

// sum over E-survivors Q at depth i(l+m) of mu(Q) / prod_{j<i} eta(Q_j).
WeightedSum weighted_sum_check(const EtaWeights& eta, const CascadeMeasure& mu, int i);

// exp(-sum_{q=1}^{floor(i p')} log_b(q(l+m)/p' + 2)^{-(l+m)}); 1/p' should be
// an integer.
double c_bound(int i, int l, int m, double p_prime, double log_base);

// Mean over adjacent levels j < depth of the probability that digits j and
// j+1 agree; the empirical variant averages over sampled points.
double digit_equal_expected(const CascadeMeasure& mu, int depth);
double digit_equal_fraction(const CascadeMeasure& mu, int depth, int n_samples,
                            std::uint64_t seed);

// Total mu-mass of the depth-level survivors of E.
double measure_of_set_approx(const CascadeMeasure& mu, const DyadicSet& E, int depth);

}  // namespace poro
