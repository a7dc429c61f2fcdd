#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poro/dyadic.hpp"

namespace poro {

// Finite-depth recursive subset of [0,1), stored as sorted survivor lists of
// binary dyadic cubes per depth. Survivors at depth g+1 are always children of
// survivors at depth g.
class DyadicSet {
 public:
  // [0,1) at every depth.
  static DyadicSet full(int build_depth);
  // 2^k-adic comb: at each k-block keep cubes whose next digit is in `keep`.
  static DyadicSet comb(int arity_log, std::vector<int> keep, int build_depth);
  // Survivors constrained digit-by-digit: allowed(level, bit) with 1-based
  // binary level.
  static DyadicSet digit_constraint(bool (*allowed)(int, int), int build_depth);
  // Binary digits at even positions forced to 0.
  static DyadicSet even_digits_zero(int build_depth);
  // The alternating Cantor/f-step construction A_{p,n} with p = m/k, built
  // through block l_max and truncated at depth_cap binary levels.
  static DyadicSet example(int m, int k, int n, int l_max, int depth_cap = 62);

  int build_depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<std::uint64_t>& survivors_at(int depth) const;
  std::uint64_t count_at(int depth) const { return survivors_at(depth).size(); }
  bool contains_cube(int depth, std::uint64_t n) const;
  // Number of survivors with index in [lo, hi) at the given depth.
  std::uint64_t count_in_range(int depth, std::uint64_t lo, std::uint64_t hi) const;
  const std::string& rule() const { return rule_; }

  // True iff some depth-(j+m) descendant of the depth-j cube D misses the
  // survivor list, i.e. D contains an m-hole.
  bool has_m_hole(int depth_j, std::uint64_t cube, int m) const;

 private:
  std::vector<std::vector<std::uint64_t>> levels_;
  std::string rule_;
};

// The analytic porous-scale family of the A_{p,n} construction: scales s with
// s - (l^2+l)/2 * (nk)^2 in {0, ..., (mnl-1)nk - 1} for some l >= 1.
struct PorousScaleSet {
  int m = 1;
  int k = 2;
  int n = 1;

  bool contains(long long s) const;
};

struct ScaleList {
  std::vector<long long> scales;
  double density = 0.0;
};

// All member scales s <= S, plus count/S.
ScaleList porous_scales(const PorousScaleSet& ps, long long S);

}  // namespace poro
