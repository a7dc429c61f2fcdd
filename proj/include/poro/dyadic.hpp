#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace poro {

// Exact dyadic rational num * 2^-exp. Keeps half-open cube arithmetic free of
// floating-point boundary ambiguity.
struct Dyadic {
  long long num = 0;
  int exp = 0;  // denominator exponent, >= 0

  Dyadic() = default;
  Dyadic(long long n, int e);
  static Dyadic from_int(long long n) { return Dyadic(n, 0); }

  void normalize();
  double to_double() const;

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const;
  bool operator<(const Dyadic& o) const;
  bool operator<=(const Dyadic& o) const;
};

// Axis-aligned box with half-open [lo, hi) extent per axis.
struct Box {
  std::vector<Dyadic> lo;
  std::vector<Dyadic> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const std::vector<Dyadic>& p) const;
};

// Half-open 2^k-adic cube of [0,1)^d, addressed by its digit path from the
// root. Digit at each level lies in [0, 2^{k*d}), encoding the per-axis
// subdivision choice (axis a occupies bits [k*a, k*(a+1))).
class CubeIndex {
 public:
  CubeIndex(int arity_log, int dim);  // root cube
  CubeIndex(int arity_log, int dim, std::vector<std::uint32_t> digits);

  int arity_log() const { return k_; }
  int dim() const { return dim_; }
  int depth() const { return static_cast<int>(digits_.size()); }
  const std::vector<std::uint32_t>& digits() const { return digits_; }

  CubeIndex child(std::uint32_t digit) const;
  std::vector<CubeIndex> children() const;
  // Unique ancestor at depth j; throws std::invalid_argument if j > depth().
  CubeIndex ancestor(int j) const;

  Dyadic side() const;             // 2^{-k*depth}
  Dyadic lower(int axis) const;    // exact lower corner coordinate
  Box box() const;

  bool contains(const CubeIndex& other) const;
  bool contains_point(const std::vector<Dyadic>& p) const;

  // Line index for d=1: lower corner numerator at scale 2^{-k*depth}.
  std::uint64_t line_index() const;
  static CubeIndex from_line_index(int arity_log, int depth, std::uint64_t n);

  // Serialization "k:i:d1.d2...di" used in CSV report columns.
  std::string id() const;
  static CubeIndex parse(const std::string& s, int dim = 1);

  bool operator==(const CubeIndex& o) const;

 private:
  int k_;
  int dim_;
  std::vector<std::uint32_t> digits_;
};

// Box with the same centre as q and each side scaled by `factor`.
Box magnify(const CubeIndex& q, const Dyadic& factor);
Box magnify(const Box& b, const Dyadic& factor);

}  // namespace poro
