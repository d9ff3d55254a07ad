#include "doctest.h"
#include "helpers.hpp"
#include "sumset/enclosure.hpp"
#include "sumset/error.hpp"

using namespace sumset;

namespace {

// 40 correct digits, so ±10^-39 brackets the true value.
const char* kLn2 = "0.6931471805599453094172321214581765680755";
const char* kLn3 = "1.0986122886681096913952452369225257046475";
const char* kLn10 = "2.3025850929940456840179914546843642076011";

void check_brackets(const Rational& x, const char* digits) {
  const Rational c = Q(digits);
  const Rational tol = pow10(-39);
  for (unsigned bits : {64u, 256u, 1024u}) {
    Enclosure e = log_enclosure(x, bits);
    CHECK(e.lo <= e.hi);
    CHECK(e.lo <= c + tol);
    CHECK(e.hi >= c - tol);
  }
  CHECK(log_enclosure(x, 256).width() < pow10(-60));
}

}  // namespace

TEST_CASE("log enclosures bracket known constants") {
  check_brackets(2, kLn2);
  check_brackets(3, kLn3);
  check_brackets(10, kLn10);
  check_brackets(make_rational(1, 2), "-0.6931471805599453094172321214581765680755");
  CHECK(log_enclosure(1, 64).contains(0));
  CHECK_THROWS_AS(log_enclosure(0, 64), Error);
  CHECK_THROWS_AS(log_enclosure(-1, 64), Error);
}

TEST_CASE("log enclosures are consistent with multiplication") {
  for (long p = 1; p < 40; p += 3) {
    for (long q = 1; q < 40; q += 5) {
      Rational x = make_rational(p, q);
      Rational y = make_rational(q + 2, p + 1);
      Enclosure sum = log_enclosure(x, 128) + log_enclosure(y, 128);
      Enclosure product = log_enclosure(x * y, 128);
      CHECK(sum.lo <= product.hi);
      CHECK(product.lo <= sum.hi);
    }
  }
  // Far from 1 in both directions.
  Enclosure tiny = log_enclosure(pow10(-1549), 256);
  Enclosure scaled = Rational(-1549) * log_enclosure(10, 256);
  CHECK(tiny.lo <= scaled.hi);
  CHECK(scaled.lo <= tiny.hi);
}

TEST_CASE("three-valued comparisons") {
  CHECK(compare_less(Enclosure{0, 1}, Enclosure{2, 3}) == Verdict::holds);
  CHECK(compare_less(Enclosure{2, 3}, Enclosure{0, 1}) == Verdict::fails);
  CHECK(compare_less(Enclosure{0, 2}, Enclosure{1, 3}) == Verdict::indeterminate);
  CHECK(compare_less(Enclosure{1, 1}, Enclosure{1, 1}) == Verdict::fails);
  CHECK(compare_less_equal(Enclosure{1, 1}, Enclosure{1, 1}) == Verdict::holds);
  // log 2 < 7/10 needs only a few bits; log 2 vs its own 40-digit truncation
  // needs more, and the adaptive loop finds it.
  CHECK(decide_less([](unsigned bits) { return std::pair{log_enclosure(2, bits), Enclosure{Q("7/10"), Q("7/10")}}; }) ==
        Verdict::holds);
  Rational below = Q(kLn2) - pow10(-39);
  CHECK(decide_less([&](unsigned bits) { return std::pair{Enclosure{below, below}, log_enclosure(2, bits)}; }) ==
        Verdict::holds);
  // An exact tie can never be resolved by enclosures.
  CHECK(decide_less([](unsigned bits) {
          Enclosure l = log_enclosure(4, bits);
          return std::pair{l, Rational(2) * log_enclosure(2, bits)};
        }) == Verdict::indeterminate);
}
