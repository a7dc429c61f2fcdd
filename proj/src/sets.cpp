#include "poro/sets.hpp"

#include <algorithm>
#include <stdexcept>

namespace poro {

namespace {
constexpr int kMaxDenseDepth = 26;  // guard against dense-set memory blowups
}

const std::vector<std::uint64_t>& DyadicSet::survivors_at(int depth) const {
  if (depth < 0 || depth > build_depth())
    throw std::invalid_argument("survivors_at: depth out of build range");
  return levels_[depth];
}

bool DyadicSet::contains_cube(int depth, std::uint64_t n) const {
  const auto& v = survivors_at(depth);
  return std::binary_search(v.begin(), v.end(), n);
}

std::uint64_t DyadicSet::count_in_range(int depth, std::uint64_t lo, std::uint64_t hi) const {
  const auto& v = survivors_at(depth);
  return std::lower_bound(v.begin(), v.end(), hi) - std::lower_bound(v.begin(), v.end(), lo);
}

bool DyadicSet::has_m_hole(int depth_j, std::uint64_t cube, int m) const {
  if (m < 1) throw std::invalid_argument("has_m_hole: m must be positive");
  if (depth_j + m > build_depth())
    throw std::invalid_argument("has_m_hole: depth exceeds build depth");
  const std::uint64_t lo = cube << m, hi = (cube + 1) << m;
  return count_in_range(depth_j + m, lo, hi) < (hi - lo);
}

DyadicSet DyadicSet::full(int build_depth) {
  if (build_depth > kMaxDenseDepth) throw std::invalid_argument("full: build depth too large");
  DyadicSet s;
  s.rule_ = "full";
  s.levels_.resize(build_depth + 1);
  for (int g = 0; g <= build_depth; ++g) {
    s.levels_[g].resize(1ull << g);
    for (std::uint64_t n = 0; n < (1ull << g); ++n) s.levels_[g][n] = n;
  }
  return s;
}

DyadicSet DyadicSet::comb(int arity_log, std::vector<int> keep, int build_depth) {
  if (keep.empty()) throw std::invalid_argument("comb: keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int d : keep)
    if (d < 0 || d >= (1 << arity_log)) throw std::invalid_argument("comb: digit out of range");
  DyadicSet s;
  s.rule_ = "comb";
  s.levels_.resize(build_depth + 1);
  s.levels_[0] = {0};
  std::vector<std::uint64_t> cur = {0};  // survivors at the last full k-block
  int g = 0;
  while (g < build_depth) {
    const int step = std::min(arity_log, build_depth - g);
    std::vector<std::uint64_t> next;
    next.reserve(cur.size() * keep.size());
    for (std::uint64_t v : cur)
      for (int d : keep) next.push_back((v << arity_log) | static_cast<std::uint64_t>(d));
    std::sort(next.begin(), next.end());
    // intermediate binary levels are the distinct ancestors of the block's cubes
    for (int t = 1; t <= step; ++t) {
      auto& lvl = s.levels_[g + t];
      lvl.reserve(next.size());
      for (std::uint64_t v : next) lvl.push_back(v >> (arity_log - t));
      lvl.erase(std::unique(lvl.begin(), lvl.end()), lvl.end());
    }
    cur = std::move(next);
    g += arity_log;
  }
  s.levels_.resize(build_depth + 1);
  return s;
}

DyadicSet DyadicSet::digit_constraint(bool (*allowed)(int, int), int build_depth) {
  DyadicSet s;
  s.rule_ = "digit-constraint";
  s.levels_.resize(build_depth + 1);
  s.levels_[0] = {0};
  for (int g = 1; g <= build_depth; ++g) {
    const auto& prev = s.levels_[g - 1];
    auto& lvl = s.levels_[g];
    lvl.reserve(prev.size() * 2);
    for (std::uint64_t v : prev)
      for (int bit = 0; bit < 2; ++bit)
        if (allowed(g, bit)) lvl.push_back((v << 1) | static_cast<std::uint64_t>(bit));
  }
  return s;
}

DyadicSet DyadicSet::even_digits_zero(int build_depth) {
  DyadicSet s = digit_constraint(
      [](int level, int bit) { return level % 2 == 1 || bit == 0; }, build_depth);
  s.rule_ = "even-digits-zero";
  return s;
}

DyadicSet DyadicSet::example(int m, int k, int n, int l_max, int depth_cap) {
  if (m < 1 || k < 1 || n < 1 || m >= k)
    throw std::invalid_argument("example: need 0 < m < k and n >= 1");
  const long long nk = static_cast<long long>(n) * k;
  const long long full_depth = nk * nk * (static_cast<long long>(l_max) * l_max + l_max) / 2;
  const int target = static_cast<int>(std::min<long long>(full_depth, depth_cap));
  if (target > 60) throw std::invalid_argument("example: instance too large");

  DyadicSet s;
  s.rule_ = "example";
  s.levels_.resize(target + 1);
  s.levels_[0] = {0};
  std::vector<std::uint64_t> cur = {0};
  int g = 0;

  auto emit = [&](int depth, std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    s.levels_[depth] = std::move(v);
  };

  for (int l = 1; l <= l_max && g < target; ++l) {
    // mnl Cantor steps: each interval is replaced by the two end subintervals
    // of relative length 2^{-nk}
    for (long long step = 0; step < static_cast<long long>(m) * n * l && g < target; ++step) {
      const int adv = static_cast<int>(std::min<long long>(nk, target - g));
      for (int t = 1; t <= adv; ++t) {
        std::vector<std::uint64_t> lvl;
        lvl.reserve(cur.size() * 2);
        for (std::uint64_t v : cur) {
          lvl.push_back(v << t);
          lvl.push_back((v << t) | ((1ull << t) - 1));
        }
        emit(g + t, std::move(lvl));
      }
      g += adv;
      cur = s.levels_[g];
    }
    if (g >= target) break;
    // f-step: divide into 2^{(nk-mn)nkl} subintervals, keep every other one
    const long long G = (nk - static_cast<long long>(m) * n) * nk * l;
    const int adv = static_cast<int>(std::min<long long>(G, target - g));
    for (int t = 1; t <= adv; ++t) {
      std::vector<std::uint64_t> lvl;
      if (t < G) {  // all offsets still have kept descendants
        lvl.reserve(cur.size() << t);
        for (std::uint64_t v : cur)
          for (std::uint64_t j = 0; j < (1ull << t); ++j) lvl.push_back((v << t) | j);
      } else {  // final level keeps the even offsets only
        lvl.reserve(cur.size() << (t - 1));
        for (std::uint64_t v : cur)
          for (std::uint64_t j = 0; j < (1ull << t); j += 2) lvl.push_back((v << t) | j);
      }
      emit(g + t, std::move(lvl));
    }
    g += adv;
    cur = s.levels_[g];
  }
  s.levels_.resize(g + 1);
  return s;
}

bool PorousScaleSet::contains(long long s) const {
  const long long nk = static_cast<long long>(n) * k;
  for (long long l = 1;; ++l) {
    const long long base = (l * l + l) / 2 * nk * nk;
    if (base > s) return false;
    const long long len = (static_cast<long long>(m) * n * l - 1) * nk;
    if (s < base + len) return true;
  }
}

ScaleList porous_scales(const PorousScaleSet& ps, long long S) {
  if (S < 1) throw std::invalid_argument("porous_scales: S must be positive");
  ScaleList out;
  const long long nk = static_cast<long long>(ps.n) * ps.k;
  // scales counted over [1, S); S itself is treated as the start of the next
  // observation window so that block boundaries land cleanly
  for (long long l = 1;; ++l) {
    const long long base = (l * l + l) / 2 * nk * nk;
    if (base >= S) break;
    const long long len = (static_cast<long long>(ps.m) * ps.n * l - 1) * nk;
    for (long long s = base; s < base + len && s < S; ++s) out.scales.push_back(s);
  }
  out.density = static_cast<double>(out.scales.size()) / static_cast<double>(S);
  return out;
}

}  // namespace poro
