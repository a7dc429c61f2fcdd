#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "poro/measure.hpp"

namespace poro::detail {

// Cell masses of a cascade measure over the window of binary cells covering
// [a, b] at granularity 2^{-g}, with prefix sums for O(1) interval brackets.
struct MassWindow {
  double h = 0.0;      // cell side 2^{-g}
  long long c0 = 0;    // first cell index covered by the prefix table
  long long c1 = 0;    // one past the last
  std::vector<double> prefix;  // prefix[i] = sum of cells c0 .. c0+i-1

  MassWindow(const CascadeMeasure& m, int levels, double a, double b) {
    const int g = m.arity_log() * levels;
    h = std::ldexp(1.0, -g);
    const std::uint64_t total = 1ull << g;
    // one extra cell on each side so that closure-touching cells are covered
    c0 = std::max<long long>(0, static_cast<long long>(std::floor(a / h)) - 1);
    c1 = std::min<long long>(static_cast<long long>(total),
                             static_cast<long long>(std::ceil(b / h)) + 1);
    if (c1 < c0) c1 = c0;
    const auto masses = m.mass_of_cells(levels, static_cast<std::uint64_t>(c0),
                                        static_cast<std::uint64_t>(c1));
    prefix.assign(masses.size() + 1, 0.0);
    for (std::size_t i = 0; i < masses.size(); ++i) prefix[i + 1] = prefix[i] + masses[i];
  }

  double cell_sum(long long lo, long long hi) const {
    lo = std::max(lo, c0);
    hi = std::min(hi, c1);
    if (hi <= lo) return 0.0;
    return prefix[hi - c0] - prefix[lo - c0];
  }

  // Mass of cells wholly inside the closed interval [u, v] (lower bracket).
  double lower(double u, double v) const {
    const long long lo = static_cast<long long>(std::ceil(u / h));
    const long long hi = static_cast<long long>(std::floor(v / h));
    return cell_sum(lo, hi);
  }

  // Mass of cells whose closure meets [u, v] (upper bracket).
  double upper(double u, double v) const {
    const long long lo = static_cast<long long>(std::ceil(u / h)) - 1;
    const long long hi = static_cast<long long>(std::floor(v / h)) + 1;
    return cell_sum(lo, hi);
  }
};

// Largest t <= t_max such that some grid ball [zh - th, zh + th] inside
// [a, b] has upper mass bracket <= budget. 0 if none. If `only_t` is
// positive, just that radius is tested.
inline long long best_hole(const MassWindow& w, double a, double b, long long t_max,
                           double budget, long long only_t = 0) {
  const long long t_lo = only_t > 0 ? only_t : 1;
  const long long t_hi = only_t > 0 ? only_t : t_max;
  for (long long t = t_hi; t >= t_lo; --t) {
    const long long z_lo = static_cast<long long>(std::ceil(a / w.h)) + t;
    const long long z_hi = static_cast<long long>(std::floor(b / w.h)) - t;
    for (long long z = z_lo; z <= z_hi; ++z)
      if (w.cell_sum(z - t - 1, z + t + 1) <= budget) return t;
  }
  return 0;
}

}  // namespace poro::detail
