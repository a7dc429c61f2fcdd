#include "poro/porosity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mass_window.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace poro {

using detail::MassWindow;
using detail::best_hole;

double por_set(const DyadicSet& A, double x, double r, int resolution_depth,
               double* slack) {
  if (!(r > 0.0)) throw std::invalid_argument("por_set: r must be positive");
  if (resolution_depth < 1 || resolution_depth > A.build_depth())
    throw std::invalid_argument("por_set: resolution_depth out of build range");
  const double h = std::ldexp(1.0, -resolution_depth);
  if (h > r) throw std::invalid_argument("por_set: resolution coarser than r");
  if (slack) *slack = h / r;

  const double a = x - r, b = x + r;
  const std::uint64_t total = 1ull << resolution_depth;
  const std::uint64_t lo =
      static_cast<std::uint64_t>(std::max(0.0, std::floor(a / h)));
  const std::uint64_t hi =
      std::min<std::uint64_t>(total, static_cast<std::uint64_t>(std::max(0.0, std::ceil(b / h))));
  const auto& surv = A.survivors_at(resolution_depth);
  auto it = std::lower_bound(surv.begin(), surv.end(), lo);
  auto end = std::lower_bound(it, surv.end(), hi);

  // everything outside the occupied cells (including the complement of [0,1])
  // is hole; scan the gaps between consecutive occupied cells
  double gap = 0.0, prev_end = a;
  for (; it != end; ++it) {
    const double cl = static_cast<double>(*it) * h;
    gap = std::max(gap, cl - prev_end);
    prev_end = std::max(prev_end, cl + h);
  }
  gap = std::max(gap, b - prev_end);
  return std::max(0.0, gap / (2.0 * r));
}

double por_measure(const CascadeMeasure& m, double x, double r, double eps,
                   int resolution_depth, double* slack) {
  if (!(r > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("por_measure: r and eps must be positive");
  const double a = x - r, b = x + r;
  MassWindow w(m, resolution_depth, a, b);
  if (w.h > r) throw std::invalid_argument("por_measure: resolution coarser than r");
  if (slack) *slack = w.h / r;

  const double ball_lower = w.lower(a, b);
  if (!(ball_lower > 0.0)) throw std::domain_error("por_measure: degenerate ball mass");
  const long long t_max = static_cast<long long>(std::floor(r / w.h));
  const long long t = best_hole(w, a, b, t_max, eps * ball_lower);
  return static_cast<double>(t) * w.h / r;
}

bool measure_porous_at(const CascadeMeasure& m, double x, double r, double eps,
                       double alpha, int resolution_depth) {
  if (!(r > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("measure_porous_at: r and eps must be positive");
  const double a = x - r, b = x + r;
  MassWindow w(m, resolution_depth, a, b);
  if (w.h > r) throw std::invalid_argument("measure_porous_at: resolution coarser than r");

  const double ball_lower = w.lower(a, b);
  if (!(ball_lower > 0.0)) throw std::domain_error("measure_porous_at: degenerate ball mass");
  // smallest grid radius whose reported value t*h/r clears alpha - h/r
  long long t = static_cast<long long>(std::ceil(alpha * r / w.h - 1.0 - 1e-12));
  if (t < 1) t = 1;
  if (t > static_cast<long long>(std::floor(r / w.h))) return false;
  return best_hole(w, a, b, t, eps * ball_lower, t) == t;
}

PorosityProfile porosity_profile(const DyadicSet& A, double x, int i_max, int offset,
                                 int arity_log, int resolution_bits) {
  if (i_max < 1 || arity_log < 1 || resolution_bits < 1)
    throw std::invalid_argument("porosity_profile: bad parameters");
  PorosityProfile p;
  p.x = x;
  p.arity_log = arity_log;
  p.offset = offset;
  for (int j = 1; j <= i_max; ++j) {
    const int rbits = arity_log * j - offset;
    if (rbits < 1) continue;
    const int g = std::min(rbits + resolution_bits, A.build_depth());
    if (g <= rbits) break;
    double slack = 0.0;
    const double v = por_set(A, x, std::ldexp(1.0, -rbits), g, &slack);
    p.scale_j.push_back(j);
    p.value.push_back(v);
    p.slack.push_back(slack);
  }
  if (p.scale_j.empty())
    throw std::invalid_argument("porosity_profile: no representable scales");
  return p;
}

PorosityProfile porosity_profile(const CascadeMeasure& m, double x, double eps, int i_max,
                                 int offset, int arity_log, int resolution_bits) {
  if (i_max < 1 || arity_log < 1 || resolution_bits < 1)
    throw std::invalid_argument("porosity_profile: bad parameters");
  PorosityProfile p;
  p.x = x;
  p.arity_log = arity_log;
  p.offset = offset;
  p.epsilon = eps;
  for (int j = 1; j <= i_max; ++j) {
    const int rbits = arity_log * j - offset;
    if (rbits < 1) continue;
    // round the resolution up to a whole number of measure levels
    const int levels =
        std::min((rbits + resolution_bits + m.arity_log() - 1) / m.arity_log(), m.max_depth());
    if (levels * m.arity_log() <= rbits) break;
    double slack = 0.0;
    const double v = por_measure(m, x, std::ldexp(1.0, -rbits), eps, levels, &slack);
    p.scale_j.push_back(j);
    p.value.push_back(v);
    p.slack.push_back(slack);
  }
  if (p.scale_j.empty())
    throw std::invalid_argument("porosity_profile: no representable scales");
  return p;
}

MeanPorosity mean_porosity_fraction(const PorosityProfile& p, double alpha, int i) {
  if (i < 1) throw std::invalid_argument("mean_porosity_fraction: i must be positive");
  std::vector<double> fractions;  // fraction over j <= i' for i' = 1..i
  int seen = 0, hits = 0;
  for (std::size_t idx = 0; idx < p.scale_j.size() && p.scale_j[idx] <= i; ++idx) {
    ++seen;
    if (p.value[idx] >= alpha - p.slack[idx]) ++hits;
    fractions.push_back(static_cast<double>(hits) / p.scale_j[idx]);
  }
  if (seen == 0) throw std::invalid_argument("mean_porosity_fraction: no scales up to i");
  MeanPorosity out;
  out.fraction = static_cast<double>(hits) / i;
  out.liminf_proxy = out.fraction;
  for (std::size_t idx = 0; idx < fractions.size(); ++idx)
    if (2 * p.scale_j[idx] >= i) out.liminf_proxy = std::min(out.liminf_proxy, fractions[idx]);
  return out;
}

std::vector<double> m_hole_frequency(const DyadicSet& E, int m, const CascadeMeasure& mu,
                                     int n_samples, std::uint64_t seed, int i) {
  if (mu.arity_log() != 1)
    throw std::invalid_argument("m_hole_frequency: measure must be binary");
  if (i < 1 || i > mu.max_depth() || i + m > E.build_depth())
    throw std::invalid_argument("m_hole_frequency: depth out of range");
  std::vector<double> out(n_samples, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n_samples; ++s) {
    const SamplePath sp = mu.sample_point(seed, i, static_cast<std::uint64_t>(s));
    int hits = 0;
    for (int j = 1; j <= i; ++j)
      if (E.has_m_hole(j, sp.numerator >> (i - j), m)) ++hits;
    out[s] = static_cast<double>(hits) / i;
  }
  return out;
}

}  // namespace poro
