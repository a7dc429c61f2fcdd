#include "poro/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poro {

EtaWeights::EtaWeights(const DyadicSet* E, int l, int m, double log_base)
    : E_(E), l_(l), m_(m) {
  if (!E || l < 1 || m < 1) throw std::invalid_argument("EtaWeights: bad parameters");
  if (!(log_base > 1.0)) throw std::invalid_argument("EtaWeights: log_base must exceed 1");
  lb_ = std::log(log_base);
}

double EtaWeights::w(int level) const {
  if (level < 1) throw std::invalid_argument("EtaWeights: level must be positive");
  return lb_ / std::log(level + 2.0);
}

double EtaWeights::eta(int depth, std::uint64_t nb) const {
  const int b = block();
  if (depth < 0 || depth % b != 0)
    throw std::invalid_argument("eta: depth must be a multiple of l+m");
  if (depth + b > E_->build_depth())
    throw std::invalid_argument("eta: depth exceeds build depth of E");
  if (!E_->has_m_hole(depth, nb, b)) return 1.0;
  double prod = 1.0;
  for (int t = depth + 1; t <= depth + b; ++t) prod *= w(t);
  return 1.0 - prod;
}

double EtaWeights::eta_product(int i, std::uint64_t nb) const {
  const int b = block();
  double prod = 1.0;
  for (int j = 0; j < i; ++j) prod *= eta(j * b, nb >> (static_cast<std::uint64_t>(i - j) * b));
  return prod;
}

WeightedSum weighted_sum_check(const EtaWeights& eta, const CascadeMeasure& mu, int i) {
  if (i < 1) throw std::invalid_argument("weighted_sum_check: i must be positive");
  if (mu.arity_log() != 1)
    throw std::invalid_argument("weighted_sum_check: measure must be binary");
  const int b = eta.block();
  const DyadicSet& E = eta.set();
  if (i * b > mu.max_depth() || i * b > E.build_depth())
    throw std::invalid_argument("weighted_sum_check: depth out of range");

  // walk the survivor lists block by block, carrying the eta product of the
  // ancestors along each branch
  std::vector<double> denom = {1.0};
  for (int j = 0; j < i; ++j) {
    const auto& anc = E.survivors_at(j * b);
    const auto& cur = E.survivors_at((j + 1) * b);
    std::vector<double> next(cur.size());
    for (std::size_t s = 0; s < cur.size(); ++s) {
      const std::uint64_t a = cur[s] >> b;
      const std::size_t ai = std::lower_bound(anc.begin(), anc.end(), a) - anc.begin();
      next[s] = denom[ai] * eta.eta(j * b, a);
    }
    denom = std::move(next);
  }
  const auto& leaves = E.survivors_at(i * b);
  WeightedSum out;
  out.terms = static_cast<long long>(leaves.size());
  for (std::size_t s = 0; s < leaves.size(); ++s)
    out.sum += mu.mass_of_cell(i * b, leaves[s]) / denom[s];
  out.holds = out.sum <= 1.0 + 1e-10;
  return out;
}

double c_bound(int i, int l, int m, double p_prime, double log_base) {
  if (i < 1 || l < 1 || m < 1) throw std::invalid_argument("c_bound: bad parameters");
  if (!(p_prime > 0.0 && p_prime <= 1.0))
    throw std::invalid_argument("c_bound: p_prime outside (0,1]");
  if (!(log_base > 1.0)) throw std::invalid_argument("c_bound: log_base must exceed 1");
  const double lb = std::log(log_base);
  const int b = l + m;
  double s = 0.0;
  const long long top = static_cast<long long>(std::floor(i * p_prime + 1e-12));
  for (long long q = 1; q <= top; ++q) {
    const double logq = std::log(q * b / p_prime + 2.0) / lb;
    s += std::pow(logq, -static_cast<double>(b));
  }
  return std::exp(-s);
}

double digit_equal_expected(const CascadeMeasure& mu, int depth) {
  if (depth < 2 || depth > mu.max_depth())
    throw std::invalid_argument("digit_equal_expected: bad depth");
  double s = 0.0;
  for (int j = 1; j < depth; ++j) {
    const double a = mu.weight(j, 0), b = mu.weight(j + 1, 0);
    s += a * b + (1.0 - a) * (1.0 - b);
  }
  return s / (depth - 1);
}

double digit_equal_fraction(const CascadeMeasure& mu, int depth, int n_samples,
                            std::uint64_t seed) {
  if (depth < 2 || n_samples < 1)
    throw std::invalid_argument("digit_equal_fraction: bad parameters");
  double total = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const SamplePath sp = mu.sample_point(seed, depth, static_cast<std::uint64_t>(s));
    int eq = 0;
    for (int j = 0; j + 1 < depth; ++j)
      if (sp.digits[j] == sp.digits[j + 1]) ++eq;
    total += static_cast<double>(eq) / (depth - 1);
  }
  return total / n_samples;
}

double measure_of_set_approx(const CascadeMeasure& mu, const DyadicSet& E, int depth) {
  if (mu.arity_log() != 1)
    throw std::invalid_argument("measure_of_set_approx: measure must be binary");
  if (depth < 1 || depth > mu.max_depth() || depth > E.build_depth())
    throw std::invalid_argument("measure_of_set_approx: bad depth");
  double s = 0.0;
  for (std::uint64_t n : E.survivors_at(depth)) s += mu.mass_of_cell(depth, n);
  return s;
}

}  // namespace poro
