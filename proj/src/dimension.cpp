#include "poro/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace poro {

namespace {

// Windowed envelopes over the tail half of the slope record. A plain max/min
// of the raw slopes is too noisy at shallow depth; the sliding window mean
// stands in for the limit behaviour.
void envelopes(const std::vector<double>& slopes, int window, double* limsup,
               double* liminf) {
  const int n = static_cast<int>(slopes.size());
  if (n == 0) throw std::invalid_argument("envelopes: empty slope record");
  const int tail = n / 2;  // first index of the tail [n/2, n)
  const int len = n - tail;
  const int w = std::min(window, len);
  double hi = -1e300, lo = 1e300;
  for (int s = tail; s + w <= n; ++s) {
    double mean = 0.0;
    for (int j = s; j < s + w; ++j) mean += slopes[j];
    mean /= w;
    hi = std::max(hi, mean);
    lo = std::min(lo, mean);
  }
  *limsup = hi;
  *liminf = lo;
}

std::vector<double> slope_record(const CascadeMeasure& m,
                                 const std::vector<std::uint32_t>& digits) {
  std::vector<double> slopes;
  slopes.reserve(digits.size());
  double lm = 0.0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const double w = m.weight(static_cast<int>(i) + 1, static_cast<int>(digits[i]));
    if (!(w > 0.0)) throw std::domain_error("local_dimension: undefined at point (zero mass)");
    lm += std::log2(w);
    slopes.push_back(lm / (-static_cast<double>(i + 1) * m.arity_log()));
  }
  return slopes;
}

PackingEstimate packing_impl(const CascadeMeasure& m, int n_samples, int depth,
                             std::uint64_t seed, PackingOptions opts, bool parallel) {
  if (n_samples < 1) throw std::invalid_argument("packing_dimension_estimate: need samples");
  if (!(opts.quantile >= 0.0 && opts.quantile <= 1.0))
    throw std::invalid_argument("packing_dimension_estimate: bad quantile");
  PackingEstimate out;
  out.sample_limsup.assign(n_samples, 0.0);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (int s = 0; s < n_samples; ++s) {
    const SamplePath sp = m.sample_point(seed, depth, static_cast<std::uint64_t>(s));
    const auto slopes = slope_record(m, sp.digits);
    double hi = 0.0, lo = 0.0;
    envelopes(slopes, opts.window, &hi, &lo);
    out.sample_limsup[s] = hi;
  }
  std::vector<double> sorted = out.sample_limsup;
  std::sort(sorted.begin(), sorted.end());
  const int idx = std::min<int>(n_samples - 1,
                                static_cast<int>(opts.quantile * (n_samples - 1)));
  out.estimate = sorted[idx];
  return out;
}

}  // namespace

DimensionEstimate local_dimension(const CascadeMeasure& m,
                                  const std::vector<std::uint32_t>& digits, int window) {
  if (digits.empty()) throw std::invalid_argument("local_dimension: empty path");
  DimensionEstimate e;
  e.window = window;
  e.slopes = slope_record(m, digits);
  envelopes(e.slopes, window, &e.limsup, &e.liminf);
  return e;
}

DimensionEstimate local_dimension(const CascadeMeasure& m, double x, int depth, int window) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("local_dimension: x outside [0,1)");
  const int kb = m.arity_log();
  if (depth < 1 || kb * depth > 62)
    throw std::invalid_argument("local_dimension: bad depth");
  const std::uint64_t num =
      static_cast<std::uint64_t>(std::floor(std::ldexp(x, kb * depth)));
  std::vector<std::uint32_t> digits(depth);
  const std::uint64_t mask = (1ull << kb) - 1;
  for (int i = 0; i < depth; ++i)
    digits[i] = static_cast<std::uint32_t>((num >> (kb * (depth - 1 - i))) & mask);
  return local_dimension(m, digits, window);
}

PackingEstimate packing_dimension_estimate(const CascadeMeasure& m, int n_samples, int depth,
                                           std::uint64_t seed, PackingOptions opts) {
  return packing_impl(m, n_samples, depth, seed, opts, true);
}

PackingEstimate packing_dimension_estimate_serial(const CascadeMeasure& m, int n_samples,
                                                  int depth, std::uint64_t seed,
                                                  PackingOptions opts) {
  return packing_impl(m, n_samples, depth, seed, opts, false);
}

DimensionEstimate box_dimension(const DyadicSet& A, int window) {
  const int n = A.build_depth();
  if (n < 1) throw std::invalid_argument("box_dimension: set has no levels");
  DimensionEstimate e;
  e.window = window;
  e.slopes.reserve(n);
  for (int g = 1; g <= n; ++g)
    e.slopes.push_back(std::log2(static_cast<double>(A.count_at(g))) / g);
  envelopes(e.slopes, window, &e.limsup, &e.liminf);
  return e;
}

HolderStep holder_step(const std::vector<double>& masses, double r, double tau, double D) {
  if (!(tau > 0.0 && tau < D)) throw std::invalid_argument("holder_step: need 0 < tau < D");
  if (!(r > 0.0) || masses.empty()) throw std::invalid_argument("holder_step: bad input");
  const double e = 1.0 - tau / D;
  HolderStep h;
  double total = 0.0;
  for (double mu : masses) {
    if (mu < 0.0) throw std::invalid_argument("holder_step: negative mass");
    h.lhs += std::pow(r, tau) * std::pow(mu, e);
    total += mu;
  }
  h.rhs = std::pow(static_cast<double>(masses.size()), tau / D) * std::pow(r, tau) *
          std::pow(total, e);
  h.holds = h.lhs <= h.rhs + 1e-12;
  return h;
}

CertificateResult dimension_certificate(const CascadeMeasure& m, double D, double tau,
                                        int i_min, int depth_limit) {
  if (!(tau > 0.0 && tau < D)) throw std::invalid_argument("dimension_certificate: need 0 < tau < D");
  if (i_min < 1 || depth_limit < i_min || depth_limit > m.max_depth())
    throw std::invalid_argument("dimension_certificate: bad depth bounds");
  const double e = 1.0 - tau / D;
  const int kb = m.arity_log();
  const int nd = m.digits_per_level();
  auto g = [&](int i) {
    return i >= i_min ? std::exp2(-static_cast<double>(kb) * i * tau) : 0.0;
  };
  // F(i): adversarial max of the cover sum below one depth-i cube, per unit
  // of mu(Q)^e. Exact because the weight profile is a function of the level.
  double F = g(depth_limit);
  double full = std::exp2(-static_cast<double>(kb) * depth_limit * tau);
  for (int i = depth_limit; i >= 1; --i) {
    double W = 0.0;
    for (int j = 0; j < nd; ++j) {
      const double w = m.weight(i, j);
      if (w > 0.0) W += std::pow(w, e);
    }
    F = std::max(g(i - 1), W * F);
    full *= W;
  }
  CertificateResult res;
  res.best_cover_sum = F;
  res.full_cover_sum = full;
  res.depth_limit = depth_limit;
  if (F < 1.0)
    res.verdict = CertificateVerdict::certified;
  else if (full >= 1.0)
    res.verdict = CertificateVerdict::refuted_at_depth;
  else
    res.verdict = CertificateVerdict::inconclusive;
  return res;
}

namespace {

struct TreeOut {
  double val = 0.0;
  std::vector<CubeIndex> wit;
};

TreeOut tree_walk(const CascadeMeasure& m, const CubeIndex& q, double mass, double e,
                  double tau, int i_min, int depth_limit) {
  const int depth = q.depth();
  const int kb = m.arity_log();
  const double cover =
      depth >= i_min ? std::exp2(-static_cast<double>(kb) * depth * tau) * std::pow(mass, e)
                     : -1.0;
  if (depth == depth_limit) return {cover, {q}};
  TreeOut below;
  std::vector<TreeOut> parts(m.digits_per_level());
  const bool spawn = depth < 3;
#pragma omp taskgroup
  {
    for (int j = 0; j < m.digits_per_level(); ++j) {
      const double w = m.weight(depth + 1, j);
      if (!(w > 0.0)) continue;
#pragma omp task shared(parts) firstprivate(j, w) if (spawn)
      parts[j] = tree_walk(m, q.child(static_cast<std::uint32_t>(j)), mass * w, e, tau,
                           i_min, depth_limit);
    }
  }
  for (auto& p : parts) {
    below.val += p.val;
    below.wit.insert(below.wit.end(), p.wit.begin(), p.wit.end());
  }
  if (cover >= below.val) return {cover, {q}};
  return below;
}

}  // namespace

CertificateResult dimension_certificate_tree(const CascadeMeasure& m, double D, double tau,
                                             int i_min, int depth_limit, bool parallel) {
  if (!(tau > 0.0 && tau < D))
    throw std::invalid_argument("dimension_certificate_tree: need 0 < tau < D");
  if (i_min < 1 || depth_limit < i_min || depth_limit > m.max_depth())
    throw std::invalid_argument("dimension_certificate_tree: bad depth bounds");
  if (m.arity_log() * depth_limit > 40)
    throw std::invalid_argument("dimension_certificate_tree: depth too large for explicit tree");
  const double e = 1.0 - tau / D;
  TreeOut root;
  if (parallel) {
#pragma omp parallel
#pragma omp single
    root = tree_walk(m, CubeIndex(m.arity_log(), 1), 1.0, e, tau, i_min, depth_limit);
  } else {
    root = tree_walk(m, CubeIndex(m.arity_log(), 1), 1.0, e, tau, i_min, depth_limit);
  }
  CertificateResult res;
  res.best_cover_sum = root.val;
  res.depth_limit = depth_limit;
  res.witness = std::move(root.wit);
  double full = std::exp2(-static_cast<double>(m.arity_log()) * depth_limit * tau);
  for (int i = 1; i <= depth_limit; ++i) {
    double W = 0.0;
    for (int j = 0; j < m.digits_per_level(); ++j) {
      const double w = m.weight(i, j);
      if (w > 0.0) W += std::pow(w, e);
    }
    full *= W;
  }
  res.full_cover_sum = full;
  if (res.best_cover_sum < 1.0)
    res.verdict = CertificateVerdict::certified;
  else if (full >= 1.0)
    res.verdict = CertificateVerdict::refuted_at_depth;
  else
    res.verdict = CertificateVerdict::inconclusive;
  return res;
}

}  // namespace poro
