#include "poro/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace poro {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

CascadeMeasure CascadeMeasure::bernoulli(double q, int max_depth) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bernoulli: q must lie in (0,1)");
  CascadeMeasure m;
  m.kind_ = Kind::bernoulli;
  m.arity_log_ = 1;
  m.max_depth_ = max_depth;
  m.q_ = q;
  m.weight_ = [q](int, int digit) { return digit == 0 ? q : 1.0 - q; };
  return m;
}

CascadeMeasure CascadeMeasure::counterexample(double log_base, int max_depth) {
  if (!(log_base > 1.0)) throw std::invalid_argument("counterexample: log_base must exceed 1");
  CascadeMeasure m;
  m.kind_ = Kind::counterexample;
  m.arity_log_ = 1;
  m.max_depth_ = max_depth;
  m.log_base_ = log_base;
  const double lb = std::log(log_base);
  m.weight_ = [lb](int level, int digit) {
    const double w = lb / std::log(level + 2.0);  // 1/log_base(i+2)
    const double s = (level % 2 == 1) ? w : 1.0 - w;
    return digit == 0 ? s : 1.0 - s;
  };
  return m;
}

CascadeMeasure CascadeMeasure::comb(int arity_log, std::vector<int> keep, int max_depth) {
  if (keep.empty()) throw std::invalid_argument("comb: keep set must be nonempty");
  const int n = 1 << arity_log;
  std::vector<char> kept(n, 0);
  for (int d : keep) {
    if (d < 0 || d >= n) throw std::invalid_argument("comb: digit out of range");
    kept[d] = 1;
  }
  int count = 0;
  for (char c : kept) count += c;
  CascadeMeasure m;
  m.kind_ = Kind::comb;
  m.arity_log_ = arity_log;
  m.max_depth_ = max_depth;
  m.weight_ = [kept, count](int, int digit) { return kept[digit] ? 1.0 / count : 0.0; };
  return m;
}

CascadeMeasure CascadeMeasure::custom(int arity_log, std::vector<std::vector<double>> weights,
                                      int max_depth) {
  if (weights.empty()) throw std::invalid_argument("custom: empty weight table");
  const int n = 1 << arity_log;
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("custom: weight row size mismatch");
    double sum = 0.0;
    for (double w : row) sum += w;
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("custom: level weights must sum to 1");
  }
  CascadeMeasure m;
  m.kind_ = Kind::custom;
  m.arity_log_ = arity_log;
  m.max_depth_ = max_depth;
  m.weight_ = [weights](int level, int digit) {
    const auto& row = weights[std::min<std::size_t>(level - 1, weights.size() - 1)];
    return row[digit];
  };
  return m;
}

double CascadeMeasure::weight(int level, int digit) const {
  if (level < 1 || digit < 0 || digit >= digits_per_level())
    throw std::invalid_argument("weight: bad level or digit");
  return weight_(level, digit);
}

double CascadeMeasure::log2_weight(int level, int digit) const {
  return std::log2(weight(level, digit));
}

double CascadeMeasure::mass_of_path(const std::vector<std::uint32_t>& digits) const {
  if (static_cast<int>(digits.size()) > max_depth_)
    throw std::invalid_argument("mass_of_path: depth exceeds max_depth");
  if (digits.size() > 64) return std::exp2(log2_mass_of_path(digits));
  double m = 1.0;
  for (std::size_t i = 0; i < digits.size(); ++i)
    m *= weight_(static_cast<int>(i) + 1, static_cast<int>(digits[i]));
  return m;
}

double CascadeMeasure::log2_mass_of_path(const std::vector<std::uint32_t>& digits) const {
  if (static_cast<int>(digits.size()) > max_depth_)
    throw std::invalid_argument("log2_mass_of_path: depth exceeds max_depth");
  double lm = 0.0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const double w = weight_(static_cast<int>(i) + 1, static_cast<int>(digits[i]));
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    lm += std::log2(w);
  }
  return lm;
}

double CascadeMeasure::mass_of_cube(const CubeIndex& q) const {
  if (q.dim() != 1) throw std::invalid_argument("mass_of_cube: requires d=1");
  if (q.arity_log() != arity_log_)
    throw std::invalid_argument("mass_of_cube: arity mismatch");
  return mass_of_path(q.digits());
}

double CascadeMeasure::mass_of_cell(int depth, std::uint64_t n) const {
  if (depth > max_depth_) throw std::invalid_argument("mass_of_cell: depth exceeds max_depth");
  double m = 1.0;
  const std::uint64_t mask = (1ull << arity_log_) - 1;
  for (int i = depth - 1; i >= 0; --i) {
    m *= weight_(i + 1, static_cast<int>((n >> (arity_log_ * (depth - 1 - i))) & mask));
  }
  return m;
}

double CascadeMeasure::log2_mass_of_cell(int depth, std::uint64_t n) const {
  if (depth > max_depth_) throw std::invalid_argument("log2_mass_of_cell: depth exceeds max_depth");
  double lm = 0.0;
  const std::uint64_t mask = (1ull << arity_log_) - 1;
  for (int i = 0; i < depth; ++i) {
    const double w = weight_(i + 1, static_cast<int>((n >> (arity_log_ * (depth - 1 - i))) & mask));
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    lm += std::log2(w);
  }
  return lm;
}

std::vector<double> CascadeMeasure::mass_of_cells(int depth, std::uint64_t lo,
                                                  std::uint64_t hi) const {
  if (depth < 0 || depth > max_depth_ || arity_log_ * depth > 62)
    throw std::invalid_argument("mass_of_cells: bad depth");
  const std::uint64_t total = 1ull << (arity_log_ * depth);
  if (lo > hi || hi > total) throw std::invalid_argument("mass_of_cells: bad range");
  std::vector<double> out(hi - lo, 0.0);
  if (lo == hi) return out;
  const int n = digits_per_level();
  struct Rec {
    const CascadeMeasure* m;
    std::uint64_t lo, hi;
    int res, n;
    std::vector<double>* out;
    void walk(int depth, std::uint64_t idx, double mass) {
      const int shift = m->arity_log_ * (res - depth);
      const std::uint64_t first = idx << shift, last = ((idx + 1) << shift);
      if (last <= lo || first >= hi) return;
      if (depth == res) {
        (*out)[idx - lo] = mass;
        return;
      }
      for (int j = 0; j < n; ++j)
        walk(depth + 1, (idx << m->arity_log_) | j, mass * m->weight_(depth + 1, j));
    }
  } rec{this, lo, hi, depth, n, &out};
  rec.walk(0, 0, 1.0);
  return out;
}

MassBracket CascadeMeasure::mass_of_ball(double x, double r, int resolution_depth) const {
  if (resolution_depth < 1 || resolution_depth > max_depth_)
    throw std::invalid_argument("mass_of_ball: bad resolution_depth");
  const double cell = std::ldexp(1.0, -arity_log_ * resolution_depth);
  if (cell > r) throw std::invalid_argument("mass_of_ball: resolution coarser than r");
  const double a = x - r, b = x + r;  // closed ball [a, b]
  MassBracket out;
  // Recursive descent over the cube tree; cubes wholly inside the ball add to
  // both bounds, partially overlapping resolution cells to the upper only.
  const int n = digits_per_level();
  struct Rec {
    const CascadeMeasure* m;
    double a, b;
    int res, n;
    MassBracket* out;
    void walk(int depth, std::uint64_t idx, double mass, double lo, double side) {
      const double hi = lo + side;
      if (lo > b || hi < a || mass <= 0.0) return;  // closure-disjoint handled below
      const bool inside = (a <= lo && hi <= b);
      if (inside) {
        out->lower += mass;
        out->upper += mass;
        return;
      }
      // [lo, hi) intersects [a,b] iff lo <= b and hi > a; boundary-touching
      // cells (hi == a) contain the point a in their closure only, so they
      // count toward the upper bracket.
      if (lo > b || hi < a) return;
      if (depth == res) {
        out->upper += mass;
        return;
      }
      const double cs = side / n;
      for (int j = 0; j < n; ++j)
        walk(depth + 1, (idx << m->arity_log_) | j,
             mass * m->weight_(depth + 1, j), lo + j * cs, cs);
    }
  } rec{this, a, b, resolution_depth, n, &out};
  rec.walk(0, 0, 1.0, 0.0, 1.0);
  return out;
}

SamplePath CascadeMeasure::sample_point(std::uint64_t seed, int depth,
                                        std::uint64_t sample_index) const {
  if (depth < 1 || depth > max_depth_)
    throw std::invalid_argument("sample_point: bad depth");
  std::mt19937_64 rng(mix_seed(seed, sample_index));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SamplePath sp;
  sp.digits.reserve(depth);
  const int n = digits_per_level();
  std::uint64_t num = 0;
  for (int i = 1; i <= depth; ++i) {
    double u = unif(rng);
    int digit = n - 1;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += weight_(i, j);
      if (u < acc) {
        digit = j;
        break;
      }
    }
    sp.digits.push_back(static_cast<std::uint32_t>(digit));
    num = (num << arity_log_) | static_cast<std::uint64_t>(digit);
  }
  sp.numerator = num;
  sp.value = std::ldexp(static_cast<double>(num), -arity_log_ * depth);
  return sp;
}

}  // namespace poro
