#include "poro/theorem.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mass_window.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace poro {

TheoremConstants constants(int d, double alpha, double c_override) {
  if (d < 1) throw std::invalid_argument("constants: d must be positive");
  if (!(alpha > 15.0 / 32.0 && alpha < 0.5))
    throw std::invalid_argument("constants: alpha must lie in (15/32, 1/2)");
  TheoremConstants tc;
  tc.d = d;
  tc.alpha = alpha;
  // smallest l with 4 sqrt(d) <= 2^l, i.e. 16 d <= 4^l
  long long pow4 = 1;
  int l = 0;
  while (pow4 < 16ll * d) {
    pow4 *= 4;
    ++l;
  }
  tc.l = l;
  const double t = (1.0 - 2.0 * alpha) * std::ldexp(1.0, l);
  const double sd = std::sqrt(static_cast<double>(d));
  int k = 0;
  for (int kk = 1; kk <= 200; ++kk) {
    if (sd * std::ldexp(1.0, -kk - 1) <= t && t < sd * std::ldexp(1.0, -kk)) {
      k = kk;
      break;
    }
  }
  if (k == 0) throw std::invalid_argument("constants: alpha too close to 1/2");
  tc.k = k;
  tc.c = c_override > 0.0 ? c_override : 4.0;
  tc.C = std::max(tc.c, 2.0 * d * std::ldexp(1.0, l));
  if (static_cast<long long>(k) * d > 62)
    throw std::invalid_argument("constants: 2^{kd} overflows");
  tc.N = 1ll << (k * d);
  tc.theorem_valid = std::ldexp(1.0, k) >= tc.C;
  return tc;
}

double beta(bool porous, const TheoremConstants& tc, double D) {
  if (!(D > 0.0)) throw std::invalid_argument("beta: D must be positive");
  const double half_k = 0.5 * tc.k;
  if (porous)
    return (1.0 / 3.0) * std::pow(tc.C, -0.5) * std::exp2(-half_k * (tc.d - 1.0 - D));
  return (1.0 / 3.0) * std::exp2(-half_k * (tc.d - D));
}

double epsilon0(const TheoremConstants& tc, double D, int n) {
  if (n < 2) throw std::invalid_argument("epsilon0: n must be at least 2");
  if (!(D > 0.0)) throw std::invalid_argument("epsilon0: D must be positive");
  const double M =
      std::max(1.0, (1.0 / 3.0) * std::pow(tc.C, -0.5) *
                        std::exp2(-0.5 * tc.k * (tc.d - 1.0 - D)));
  const double a = 5.0 / (6.0 * (n - 1));
  return a * a / static_cast<double>(tc.N) *
         std::exp2(-2.0 * tc.k * (n - 1) * (tc.d - 0.5 * D)) *
         std::pow(M, -2.0 * (n - 1));
}

double epsilon_response(const TheoremConstants& tc, double D, int n, double eps) {
  if (n < 2) throw std::invalid_argument("epsilon_response: n must be at least 2");
  const double M =
      std::max(1.0, (1.0 / 3.0) * std::pow(tc.C, -0.5) *
                        std::exp2(-0.5 * tc.k * (tc.d - 1.0 - D)));
  return (n - 1) / 3.0 * std::sqrt(eps * static_cast<double>(tc.N)) *
         std::pow(tc.C, -0.5) * std::exp2(0.5 * tc.k) *
         std::exp2(tc.k * (n - 1) * (tc.d - 0.5 * D)) * std::pow(M, n - 1.0);
}

PorosityGain porosity_gain(const TheoremConstants& tc, double p, double D) {
  if (!(p > 0.0 && p <= tc.d)) throw std::invalid_argument("porosity_gain: p outside (0, d]");
  PorosityGain g;
  g.D0 = tc.d - p + std::log2(9.0 * tc.C) / tc.k;
  if (!(D > g.D0)) throw std::invalid_argument("porosity_gain: need D > D0");
  g.delta = (1.0 / g.D0 - 1.0 / D) * (tc.d - p);
  const double need = tc.k - std::log2(tc.C);
  int n = 1;
  while (!(tc.k * g.delta * D * n > need)) {
    if (++n > 1000000000) throw std::runtime_error("porosity_gain: n diverges");
  }
  g.n = n;
  g.K = std::sqrt(tc.C * std::exp2(-static_cast<double>(tc.k) + tc.k * g.delta * D * n));
  return g;
}

DimBound dim_bound(int d, double p, double alpha, double c_override) {
  DimBound b;
  b.tc = constants(d, alpha, c_override);
  if (!(p > 0.0 && p <= d)) throw std::invalid_argument("dim_bound: p outside (0, d]");
  b.D0 = d - p + std::log2(9.0 * b.tc.C) / b.tc.k;
  b.bound = b.D0;
  b.vacuous = b.bound >= d;
  return b;
}

namespace {

// Porosity classification of one 2^k-adic cube at tree level `lev`: some
// witness point sees an eps-light grid ball of radius alpha * 2^{-k(lev-1)+l}.
bool cube_is_porous(const CascadeMeasure& m, const TheoremConstants& tc, double eps,
                    int lev, std::uint64_t nb, int resolution_bits) {
  const int k = tc.k;
  const int rbits = k * (lev - 1) - tc.l;  // r = 2^{-rbits}, possibly >= 1
  const double r = std::ldexp(1.0, -rbits);
  const int g_target = std::max(rbits, 0) + resolution_bits;
  const int ar = m.arity_log();
  const int levels = (g_target + ar - 1) / ar;
  if (levels > m.max_depth())
    throw std::invalid_argument("verify_claim1: resolution exceeds measure depth");

  const double side = std::ldexp(1.0, -k * lev);
  const double lo = static_cast<double>(nb) * side;
  detail::MassWindow w(m, levels, lo - r, lo + side + r);
  long long t = static_cast<long long>(std::ceil(tc.alpha * r / w.h - 1e-9));
  if (t < 1) t = 1;

  const int nchild = 1 << k;
  for (int c = -1; c <= nchild; ++c) {
    // c = -1 and c = nchild give the two corners, the rest child centres
    const double x = c < 0          ? lo
                     : c == nchild ? lo + side
                                   : lo + (c + 0.5) * side / nchild;
    const double bl = w.lower(x - r, x + r);
    if (!(bl > 0.0)) return true;  // massless region, trivially eps-light
    if (detail::best_hole(w, x - r, x + r, t, eps * bl, t) == t) return true;
  }
  return false;
}

}  // namespace

Claim1Result verify_claim1(const CascadeMeasure& m, const TheoremConstants& tc, double D,
                           double eps, const CubeIndex& q, int n, int resolution_bits,
                           bool parallel) {
  if (q.dim() != 1 || q.arity_log() != tc.k)
    throw std::invalid_argument("verify_claim1: base cube does not match constants");
  if (tc.k % m.arity_log() != 0)
    throw std::invalid_argument("verify_claim1: measure arity must divide 2^k tree");
  if (n < 1 || !(D > 0.0) || !(eps > 0.0) || resolution_bits < 1)
    throw std::invalid_argument("verify_claim1: bad parameters");
  const int k = tc.k, i = q.depth(), ar = m.arity_log();
  if (static_cast<long long>(k) * (i + n) > 40)
    throw std::invalid_argument("verify_claim1: instance too large");

  // betas[j-1][off]: weight of the level-(i+j) ancestor with offset `off`
  // under q. Each cube is classified exactly once.
  const std::uint64_t qnb = q.line_index();
  std::vector<std::vector<double>> betas(n);
  Claim1Result res;
  for (int j = 1; j <= n; ++j) {
    const long long count = 1ll << (k * j);
    betas[j - 1].assign(count, 0.0);
    long long porous = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : porous) if (parallel)
    for (long long off = 0; off < count; ++off) {
      const std::uint64_t nb = (qnb << (k * j)) | static_cast<std::uint64_t>(off);
      const bool por = cube_is_porous(m, tc, eps, i + j, nb, resolution_bits);
      betas[j - 1][off] = beta(por, tc, D);
      if (por) ++porous;
    }
    res.porous_cubes += porous;
    res.classified_cubes += count;
  }

  const long long leaves = 1ll << (k * n);
  res.leaves = leaves;
  const double r_leaf = std::ldexp(1.0, -k * (i + n));
  const double r_leaf_pow = std::pow(r_leaf, 0.5 * D);
  std::vector<double> contrib(leaves, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
  for (long long off = 0; off < leaves; ++off) {
    double prod = 1.0;
    for (int j = 1; j <= n; ++j) prod *= betas[j - 1][off >> (k * (n - j))];
    const std::uint64_t nb = (qnb << (k * n)) | static_cast<std::uint64_t>(off);
    const double mass = m.mass_of_cell(k * (i + n) / ar, nb);
    contrib[off] = prod * r_leaf_pow * std::sqrt(mass);
  }
  // fixed-order reduction keeps the result independent of the thread count
  for (double v : contrib) res.lhs += v;

  const double mass_q = i == 0 ? 1.0 : m.mass_of_cell(k * i / ar, qnb);
  res.rhs = std::pow(tc.C, -0.5) * std::exp2(0.5 * k) *
            std::pow(std::ldexp(1.0, -k * i), 0.5 * D) * std::sqrt(mass_q);
  res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
  res.holds = res.lhs <= res.rhs * (1.0 + 1e-12);
  return res;
}

}  // namespace poro
