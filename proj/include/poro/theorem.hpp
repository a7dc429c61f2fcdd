#pragma once

#include <cstdint>

#include "poro/measure.hpp"

namespace poro {

// The explicit constants attached to a dimension-bound run in ambient
// dimension d at porosity level alpha.
struct TheoremConstants {
  int d = 1;
  double alpha = 0.0;
  int l = 0;           // smallest l with 4 sqrt(d) <= 2^l
  int k = 0;           // sqrt(d) 2^{-k-1} <= (1-2 alpha) 2^l < sqrt(d) 2^{-k}
  double c = 0.0;      // doubling-type constant, configurable
  double C = 0.0;      // max(c, 2 d 2^l)
  long long N = 0;     // 2^{k d}
  bool theorem_valid = false;  // 2^k >= C
};

// alpha must lie in (15/32, 1/2). c_override <= 0 selects the default c = 4.
TheoremConstants constants(int d, double alpha, double c_override = 0.0);

// Per-level weight in the telescoping product: smaller for porous cubes.
double beta(bool porous, const TheoremConstants& tc, double D);

// The threshold epsilon for which the n-step response R(eps, n) equals
// (5/18) C^{-1/2} 2^{k/2}. Requires n >= 2.
double epsilon0(const TheoremConstants& tc, double D, int n);
// R(eps, n) itself, for residual checks against the target above.
double epsilon_response(const TheoremConstants& tc, double D, int n, double eps);

struct PorosityGain {
  double D0 = 0.0;     // d - p + log(9C) / (k log 2)
  double delta = 0.0;  // (1/D0 - 1/D)(d - p)
  int n = 0;           // least n with 2^{k delta D n} > C^{-1} 2^k
  double K = 0.0;      // (C 2^{-k} 2^{k delta D n})^{1/2}
};

// Requires D > D0; otherwise the gain is empty.
PorosityGain porosity_gain(const TheoremConstants& tc, double p, double D);

struct DimBound {
  TheoremConstants tc;
  double D0 = 0.0;
  double bound = 0.0;    // d - p + log2(9C)/k
  bool vacuous = false;  // bound >= d carries no information
};

DimBound dim_bound(int d, double p, double alpha, double c_override = 0.0);

struct Claim1Result {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
  bool holds = false;
  long long leaves = 0;
  long long porous_cubes = 0;
  long long classified_cubes = 0;
};

// Finite verification of the telescoped product inequality under one base
// cube q of the 2^k-adic tree: sum over depth-n descendants Q' of
// prod_j beta(Q'_ancestors) r^{D/2} mu(Q')^{1/2} against
// C^{-1/2} 2^{k/2} r_q^{D/2} mu(q)^{1/2}. A level-(i+1) cube is porous when
// some witness point in it (child centres and the two corners) sees an
// eps-light grid ball of radius >= alpha * 2^{-ki+l}.
Claim1Result verify_claim1(const CascadeMeasure& m, const TheoremConstants& tc, double D,
                           double eps, const CubeIndex& q, int n, int resolution_bits,
                           bool parallel = true);

}  // namespace poro
