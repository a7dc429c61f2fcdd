#include "poro/dyadic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace poro {

Dyadic::Dyadic(long long n, int e) : num(n), exp(e) {
  if (e < 0) throw std::invalid_argument("Dyadic: negative exponent");
  normalize();
}

void Dyadic::normalize() {
  while (exp > 0 && (num & 1) == 0) {
    num >>= 1;
    --exp;
  }
  if (num == 0) exp = 0;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num), -exp); }

namespace {
// Common-denominator numerators for a pair; uses __int128 to avoid overflow.
void align(const Dyadic& a, const Dyadic& b, __int128& na, __int128& nb, int& e) {
  e = std::max(a.exp, b.exp);
  na = static_cast<__int128>(a.num) << (e - a.exp);
  nb = static_cast<__int128>(b.num) << (e - b.exp);
}

Dyadic from_wide(__int128 n, int e) {
  while (e > 0 && (n & 1) == 0) {
    n >>= 1;
    --e;
  }
  if (n > static_cast<__int128>(INT64_MAX) || n < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error("Dyadic: numerator overflow");
  return Dyadic(static_cast<long long>(n), e);
}
}  // namespace

Dyadic Dyadic::operator+(const Dyadic& o) const {
  __int128 na, nb;
  int e;
  align(*this, o, na, nb, e);
  return from_wide(na + nb, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  __int128 na, nb;
  int e;
  align(*this, o, na, nb, e);
  return from_wide(na - nb, e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return from_wide(static_cast<__int128>(num) * o.num, exp + o.exp);
}

bool Dyadic::operator==(const Dyadic& o) const { return num == o.num && exp == o.exp; }

bool Dyadic::operator<(const Dyadic& o) const {
  __int128 na, nb;
  int e;
  align(*this, o, na, nb, e);
  return na < nb;
}

bool Dyadic::operator<=(const Dyadic& o) const { return *this < o || *this == o; }

bool Box::contains(const std::vector<Dyadic>& p) const {
  for (int a = 0; a < dim(); ++a)
    if (p[a] < lo[a] || !(p[a] < hi[a])) return false;
  return true;
}

CubeIndex::CubeIndex(int arity_log, int dim) : k_(arity_log), dim_(dim) {
  if (arity_log < 1 || dim < 1) throw std::invalid_argument("CubeIndex: bad parameters");
  if (arity_log * dim > 30) throw std::invalid_argument("CubeIndex: arity too large");
}

CubeIndex::CubeIndex(int arity_log, int dim, std::vector<std::uint32_t> digits)
    : CubeIndex(arity_log, dim) {
  const std::uint32_t lim = 1u << (k_ * dim_);
  for (std::uint32_t d : digits)
    if (d >= lim) throw std::invalid_argument("CubeIndex: digit out of range");
  digits_ = std::move(digits);
}

CubeIndex CubeIndex::child(std::uint32_t digit) const {
  CubeIndex c = *this;
  if (digit >= (1u << (k_ * dim_))) throw std::invalid_argument("CubeIndex: digit out of range");
  c.digits_.push_back(digit);
  return c;
}

std::vector<CubeIndex> CubeIndex::children() const {
  std::vector<CubeIndex> out;
  const std::uint32_t n = 1u << (k_ * dim_);
  out.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) out.push_back(child(j));
  return out;
}

CubeIndex CubeIndex::ancestor(int j) const {
  if (j < 0 || j > depth()) throw std::invalid_argument("ancestor: depth out of range");
  CubeIndex a(k_, dim_);
  a.digits_.assign(digits_.begin(), digits_.begin() + j);
  return a;
}

Dyadic CubeIndex::side() const { return Dyadic(1, k_ * depth()); }

Dyadic CubeIndex::lower(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("lower: bad axis");
  long long n = 0;
  const std::uint32_t mask = (1u << k_) - 1;
  for (std::uint32_t d : digits_) n = (n << k_) | ((d >> (k_ * axis)) & mask);
  return Dyadic(n, k_ * depth());
}

Box CubeIndex::box() const {
  Box b;
  const Dyadic s = side();
  for (int a = 0; a < dim_; ++a) {
    b.lo.push_back(lower(a));
    b.hi.push_back(lower(a) + s);
  }
  return b;
}

bool CubeIndex::contains(const CubeIndex& other) const {
  if (other.depth() < depth()) return false;
  for (int i = 0; i < depth(); ++i)
    if (digits_[i] != other.digits_[i]) return false;
  return true;
}

bool CubeIndex::contains_point(const std::vector<Dyadic>& p) const { return box().contains(p); }

std::uint64_t CubeIndex::line_index() const {
  if (dim_ != 1) throw std::invalid_argument("line_index: requires d=1");
  std::uint64_t n = 0;
  for (std::uint32_t d : digits_) n = (n << k_) | d;
  return n;
}

CubeIndex CubeIndex::from_line_index(int arity_log, int depth, std::uint64_t n) {
  std::vector<std::uint32_t> digits(depth);
  const std::uint64_t mask = (1ull << arity_log) - 1;
  for (int i = depth - 1; i >= 0; --i) {
    digits[i] = static_cast<std::uint32_t>(n & mask);
    n >>= arity_log;
  }
  return CubeIndex(arity_log, 1, std::move(digits));
}

std::string CubeIndex::id() const {
  std::ostringstream os;
  os << k_ << ':' << depth() << ':';
  for (int i = 0; i < depth(); ++i) {
    if (i) os << '.';
    os << digits_[i];
  }
  return os.str();
}

CubeIndex CubeIndex::parse(const std::string& s, int dim) {
  std::istringstream is(s);
  int k = 0, depth = 0;
  char sep = 0;
  if (!(is >> k >> sep >> depth) || sep != ':') throw std::invalid_argument("CubeIndex: bad id");
  if (!(is >> sep) || sep != ':') throw std::invalid_argument("CubeIndex: bad id");
  std::vector<std::uint32_t> digits;
  for (int i = 0; i < depth; ++i) {
    std::uint32_t d = 0;
    if (i && (!(is >> sep) || sep != '.')) throw std::invalid_argument("CubeIndex: bad id");
    if (!(is >> d)) throw std::invalid_argument("CubeIndex: bad id");
    digits.push_back(d);
  }
  return CubeIndex(k, dim, std::move(digits));
}

bool CubeIndex::operator==(const CubeIndex& o) const {
  return k_ == o.k_ && dim_ == o.dim_ && digits_ == o.digits_;
}

Box magnify(const Box& b, const Dyadic& factor) {
  Box out;
  const Dyadic half(1, 1);
  for (int a = 0; a < b.dim(); ++a) {
    // centre +/- factor * half-width, exact
    Dyadic centre = (b.lo[a] + b.hi[a]) * half;
    Dyadic halfw = (b.hi[a] - b.lo[a]) * half * factor;
    out.lo.push_back(centre - halfw);
    out.hi.push_back(centre + halfw);
  }
  return out;
}

Box magnify(const CubeIndex& q, const Dyadic& factor) { return magnify(q.box(), factor); }

}  // namespace poro
