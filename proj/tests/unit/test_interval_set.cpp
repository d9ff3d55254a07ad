#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "sumset/error.hpp"

using namespace sumset;

TEST_CASE("normalize merges and sorts") {
  CHECK(S({{"0", "1"}, {"1/2", "3/4"}}) == S({{"0", "1"}}));
  CHECK(S({{"1", "1"}, {"0", "1/5"}}).components() == std::vector<Interval>{{0, Q("1/5")}, {1, 1}});
  CHECK(S({{"0", "1/2"}, {"1/2", "1"}}).components() == std::vector<Interval>{{0, 1}});
  CHECK(S({{"2", "2"}, {"0", "2"}}).size() == 1);
  CHECK_THROWS_AS(S({{"1", "0"}}), Error);
}

TEST_CASE("measure and diameter") {
  CHECK(IntervalSet().measure() == 0);
  CHECK(S({{"0", "1/5"}, {"1", "1"}}).measure() == Q("1/5"));
  CHECK(S({{"0", "1/2"}, {"1", "3/2"}}).measure() == 1);
  CHECK(S({{"0", "1/5"}, {"1", "1"}}).diameter() == 1);
  CHECK(S({{"3", "4"}}).diameter() == 1);
  CHECK(S({{"0", "0"}}).diameter() == 0);
  CHECK_THROWS_AS(IntervalSet().diameter(), Error);
}

TEST_CASE("minkowski sum examples") {
  CHECK(minkowski_sum(S({{"0", "1"}}), S({{"0", "1"}})) == S({{"0", "2"}}));
  CHECK(minkowski_sum(S({{"0", "1/4"}, {"1", "1"}}), S({{"0", "1/4"}})) == S({{"0", "1/2"}, {"1", "5/4"}}));
  IntervalSet a0 = S({{"0", "9/40"}, {"37/40", "11/10"}});
  IntervalSet b0 = S({{"0", "1/8"}, {"37/40", "1"}});
  CHECK(minkowski_sum(a0, b0).measure() == Q("9/10"));
  CHECK_THROWS_AS(minkowski_sum(IntervalSet(), a0), Error);
}

TEST_CASE("boolean operation examples") {
  CHECK(intersection(S({{"0", "1"}}), S({{"1/2", "2"}})) == S({{"1/2", "1"}}));
  CHECK(difference(S({{"0", "1"}}), S({{"1/4", "1/2"}})) == S({{"0", "1/4"}, {"1/2", "1"}}));
  CHECK(symmetric_difference(S({{"0", "1"}}), S({{"0", "1"}})).empty());
  // A removed point leaves no trace under the closure convention.
  CHECK(difference(S({{"0", "1"}}), S({{"1/2", "1/2"}})) == S({{"0", "1"}}));
  CHECK(difference(S({{"0", "0"}, {"2", "3"}}), S({{"0", "1"}})) == S({{"2", "3"}}));
}

TEST_CASE("transforms") {
  CHECK(reflect(S({{"0", "1/8"}, {"37/40", "1"}})) == S({{"0", "3/40"}, {"7/8", "1"}}));
  CHECK(translate(S({{"0", "1"}}), 3) == S({{"3", "4"}}));
  CHECK(scale(S({{"1", "2"}}), -1) == S({{"-2", "-1"}}));
  CHECK_THROWS_AS(scale(S({{"1", "2"}}), 0), Error);
}

TEST_CASE("feasible translate examples") {
  CHECK(feasible_translates(S({{"1/4", "1/2"}}), S({{"0", "1/2"}})) == S({{"0", "1/4"}}));
  IntervalSet v = S({{"0", "1"}, {"2", "3"}});
  CHECK(feasible_translates(v, v).contains(0));
  IntervalSet padded = minkowski_sum(v, S({{"0", "1/10"}}));
  CHECK(feasible_translates(v, padded) == S({{"-1/10", "0"}}));
}

TEST_CASE("minkowski sum against the cell-convolution oracle") {
  oracle::Generator gen(11);
  for (int trial = 0; trial < 400; ++trial) {
    auto ra = gen.raw(5, -10, 30);
    auto rb = gen.raw(5, -10, 30);
    const long den = gen.uniform(1, 7);
    IntervalSet s = minkowski_sum(oracle::to_set(ra, den), oracle::to_set(rb, den));
    oracle::Grid expected = oracle::sum(oracle::Grid::from(ra), oracle::Grid::from(rb));
    REQUIRE(s.measure() * den == expected.measure());
    REQUIRE(oracle::agrees_on_half_grid(s, den, -25, 90, [&](long x2) { return oracle::member(expected, x2); }));
  }
}

TEST_CASE("boolean operations against pointwise oracles") {
  oracle::Generator gen(12);
  for (int trial = 0; trial < 400; ++trial) {
    auto rs = gen.raw(6, 0, 25);
    auto rt = gen.raw(6, 0, 25);
    oracle::Grid gs = oracle::Grid::from(rs), gt = oracle::Grid::from(rt);
    IntervalSet s = oracle::to_set(rs), t = oracle::to_set(rt);
    auto in_s = [&](long x2) { return oracle::member(gs, x2); };
    auto in_t = [&](long x2) { return oracle::member(gt, x2); };
    REQUIRE(oracle::agrees_on_half_grid(set_union(s, t), 1, -2, 35, [&](long x) { return in_s(x) || in_t(x); }));
    REQUIRE(oracle::agrees_on_half_grid(intersection(s, t), 1, -2, 35, [&](long x) { return in_s(x) && in_t(x); }));
    // Closure of S \ T: open cells are decided at half points, integers by
    // themselves or an adjacent open cell.
    auto diff = [&](long x2) {
      auto raw = [&](long y) { return in_s(y) && !in_t(y); };
      if (x2 % 2 != 0) return raw(x2);
      return raw(x2) || raw(x2 - 1) || raw(x2 + 1);
    };
    REQUIRE(oracle::agrees_on_half_grid(difference(s, t), 1, -2, 35, diff));
    IntervalSet sym = symmetric_difference(s, t);
    REQUIRE(sym == set_union(difference(s, t), difference(t, s)));
    REQUIRE(s.measure() + t.measure() == set_union(s, t).measure() + intersection(s, t).measure());
  }
}

TEST_CASE("feasible translates against brute-force shifts") {
  oracle::Generator gen(13);
  for (int trial = 0; trial < 300; ++trial) {
    auto ra = gen.raw(3, 0, 8, 3);
    auto rv = gen.raw(6, -6, 24, 8);
    // A ⊆ t + V iff A - t ⊆ V; work in half units so half-integer shifts
    // are integer grid shifts.
    auto doubled = [](std::vector<std::pair<long, long>> r) {
      for (auto& [lo, hi] : r) lo *= 2, hi *= 2;
      return r;
    };
    oracle::Grid ga = oracle::Grid::from(doubled(ra)), gv = oracle::Grid::from(doubled(rv));
    IntervalSet f = feasible_translates(oracle::to_set(ra), oracle::to_set(rv));
    for (long t2 = -40; t2 <= 60; ++t2) {
      REQUIRE(f.contains(make_rational(t2, 2)) == oracle::shifted_inside(ga, gv, -t2));
    }
  }
}

TEST_CASE("property: canonical form and algebraic identities") {
  oracle::Generator gen(14);
  for (int trial = 0; trial < 300; ++trial) {
    IntervalSet s = oracle::to_set(gen.raw(), 3);
    IntervalSet t = oracle::to_set(gen.raw(), 5);
    const auto& c = s.components();
    for (std::size_t i = 0; i < c.size(); ++i) {
      REQUIRE(c[i].lo <= c[i].hi);
      if (i + 1 < c.size()) REQUIRE(c[i].hi < c[i + 1].lo);
    }
    REQUIRE(IntervalSet::normalize(c) == s);
    REQUIRE(minkowski_sum(s, t) == minkowski_sum(t, s));
    REQUIRE(minkowski_sum(s, t).measure() >= s.measure());
    REQUIRE(reflect(reflect(s)) == translate(s, -s.min()));
    Rational shift = make_rational(gen.uniform(-20, 20), 7);
    REQUIRE(minkowski_sum(translate(s, shift), t) == translate(minkowski_sum(s, t), shift));
    REQUIRE(scale(s, 3).measure() == 3 * s.measure());
    REQUIRE(s.includes(intersection(s, t)));
    REQUIRE(set_union(s, t).includes(t));
  }
}
