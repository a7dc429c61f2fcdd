#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "poro/dyadic.hpp"

namespace poro {

// Resolution-limited two-sided estimate of a ball mass.
struct MassBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Digit path sampled from a cascade measure, with the point it pins down.
struct SamplePath {
  std::vector<std::uint32_t> digits;
  double value = 0.0;         // left endpoint of the deepest cube
  std::uint64_t numerator = 0;  // at scale 2^{-arity_log*depth}
};

// Radon probability measure on [0,1] defined by per-level multiplicative
// weights on the 2^k-adic tree. Immutable after construction; all queries
// are pure.
class CascadeMeasure {
 public:
  enum class Kind { bernoulli, counterexample, comb, custom };

  // Every level assigns weight q to digit 0 and 1-q to digit 1.
  static CascadeMeasure bernoulli(double q, int max_depth);
  // The alternating-weight measure with w(i) = 1/log_base(i+2),
  // s(i) = w(i) for odd i and 1-w(i) for even i.
  static CascadeMeasure counterexample(double log_base, int max_depth);
  // Uniform on the cubes of a digit comb (weight 1/|keep| on kept digits).
  static CascadeMeasure comb(int arity_log, std::vector<int> keep, int max_depth);
  // Explicit per-level weight tables; levels beyond the table reuse its last row.
  static CascadeMeasure custom(int arity_log, std::vector<std::vector<double>> weights,
                               int max_depth);

  Kind kind() const { return kind_; }
  int arity_log() const { return arity_log_; }
  int digits_per_level() const { return 1 << arity_log_; }
  int max_depth() const { return max_depth_; }
  double log_base() const { return log_base_; }
  double q() const { return q_; }

  // Weight of digit j at (1-based) level i.
  double weight(int level, int digit) const;
  double log2_weight(int level, int digit) const;

  double mass_of_cube(const CubeIndex& q) const;
  double mass_of_path(const std::vector<std::uint32_t>& digits) const;
  // Safe at any depth; -inf for zero-weight paths.
  double log2_mass_of_path(const std::vector<std::uint32_t>& digits) const;
  // Cube at `depth` levels with line index n.
  double mass_of_cell(int depth, std::uint64_t n) const;
  double log2_mass_of_cell(int depth, std::uint64_t n) const;
  // Masses of the cells [lo, hi) at `depth`, computed by a single pruned
  // descent (cost O(hi-lo + depth), not O((hi-lo)*depth)).
  std::vector<double> mass_of_cells(int depth, std::uint64_t lo, std::uint64_t hi) const;

  // Bracket for the closed ball B(x,r); resolution 2^{-k*resolution_depth}
  // must not be coarser than r.
  MassBracket mass_of_ball(double x, double r, int resolution_depth) const;

  // Level-by-level sampling with the measure's conditional weights.
  // Deterministic for a fixed (seed, sample_index) pair.
  SamplePath sample_point(std::uint64_t seed, int depth,
                          std::uint64_t sample_index = 0) const;

 private:
  CascadeMeasure() = default;

  Kind kind_ = Kind::custom;
  int arity_log_ = 1;
  int max_depth_ = 0;
  double log_base_ = 0.0;  // counterexample only
  double q_ = 0.0;         // bernoulli only
  std::function<double(int, int)> weight_;
};

// splitmix64; used to derive independent per-sample generator seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace poro
