#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "poro/dyadic.hpp"

using namespace poro;

TEST_CASE("dyadic arithmetic is exact and normalized") {
  CHECK(Dyadic(4, 4) == Dyadic(1, 2));
  CHECK(Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2));
  CHECK(Dyadic(3, 2) - Dyadic(1, 1) == Dyadic(1, 2));
  CHECK(Dyadic(3, 2) * Dyadic(5, 3) == Dyadic(15, 5));
  CHECK(Dyadic(1, 3) - Dyadic(1, 1) == Dyadic(-3, 3));
  CHECK(Dyadic(1, 2) < Dyadic(1, 1));
  CHECK(Dyadic(1, 2) <= Dyadic(2, 3));
  CHECK(Dyadic(5, 3).to_double() == 0.625);
  CHECK_THROWS_AS(Dyadic(1, -1), std::invalid_argument);
}

TEST_CASE("dyadic sums agree with doubles on random small inputs") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Dyadic a(static_cast<long long>(rng() % 2048) - 1024, static_cast<int>(rng() % 20));
    const Dyadic b(static_cast<long long>(rng() % 2048) - 1024, static_cast<int>(rng() % 20));
    CHECK((a + b).to_double() == a.to_double() + b.to_double());
    CHECK((a * b).to_double() == a.to_double() * b.to_double());
    CHECK((a < b) == (a.to_double() < b.to_double()));
  }
}

TEST_CASE("cube ids round-trip and line indices match digit paths") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int depth = 1 + static_cast<int>(rng() % 6);
    const std::uint64_t n = rng() & ((1ull << (k * depth)) - 1);
    const CubeIndex q = CubeIndex::from_line_index(k, depth, n);
    CHECK(q.line_index() == n);
    CHECK(CubeIndex::parse(q.id()) == q);
    CHECK(q.depth() == depth);
  }
  CHECK_THROWS_AS(CubeIndex::parse("2:3:0.1"), std::invalid_argument);
}

TEST_CASE("ancestors are digit prefixes and contain the cube") {
  const CubeIndex q(2, 1, {1, 3, 0});
  for (int j = 0; j <= 3; ++j) {
    const CubeIndex a = q.ancestor(j);
    CHECK(a.depth() == j);
    CHECK(a.contains(q));
  }
  CHECK_FALSE(q.ancestor(2).contains(q.ancestor(1)));
  CHECK_THROWS_AS(q.ancestor(4), std::invalid_argument);
}

TEST_CASE("boxes are half-open") {
  const CubeIndex q(1, 1, {1, 0});  // [1/2, 3/4)
  CHECK(q.lower(0) == Dyadic(1, 1));
  CHECK(q.side() == Dyadic(1, 2));
  CHECK(q.contains_point({Dyadic(1, 1)}));
  CHECK(q.contains_point({Dyadic(5, 3)}));
  CHECK_FALSE(q.contains_point({Dyadic(3, 2)}));  // upper face excluded
  CHECK_FALSE(q.contains_point({Dyadic(1, 2)}));
}

TEST_CASE("two-dimensional digits split per axis") {
  const CubeIndex q(1, 2, {3});  // both axes take the upper half
  CHECK(q.lower(0) == Dyadic(1, 1));
  CHECK(q.lower(1) == Dyadic(1, 1));
  const CubeIndex r(1, 2, {1});  // axis 0 upper, axis 1 lower
  CHECK(r.lower(0) == Dyadic(1, 1));
  CHECK(r.lower(1) == Dyadic(0, 0));
  CHECK(q.children().size() == 4);
}

TEST_CASE("magnify scales around the centre exactly") {
  const Box b1 = magnify(CubeIndex(1, 1), Dyadic(3, 0));  // [0,1) scaled by 3
  CHECK(b1.lo[0] == Dyadic(-1, 0));
  CHECK(b1.hi[0] == Dyadic(2, 0));
  const Box b2 = magnify(CubeIndex(1, 1, {1, 0}), Dyadic(2, 0));  // [1/2,3/4) by 2
  CHECK(b2.lo[0] == Dyadic(3, 3));
  CHECK(b2.hi[0] == Dyadic(7, 3));
  const Box b3 = magnify(CubeIndex(1, 1, {0}), Dyadic(1, 0));
  CHECK(b3.lo[0] == Dyadic(0, 0));
  CHECK(b3.hi[0] == Dyadic(1, 1));
}
