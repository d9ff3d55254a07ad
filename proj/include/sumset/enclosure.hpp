#pragma once

#include <string>
#include <utility>

#include "sumset/rational.hpp"

namespace sumset {

// Three-valued outcome of a comparison that may involve transcendental
// quantities. `holds` and `fails` are only reported when provable.
enum class Verdict { holds, fails, indeterminate };

std::string to_string(Verdict v);
Verdict verdict_of(bool provable);

// Closed rational interval [lo, hi] known to contain some real number.
struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure exact(const Rational& v) { return {v, v}; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Rational& c, const Enclosure& a);
Enclosure operator+(const Rational& c, const Enclosure& a);
Enclosure operator-(const Enclosure& a);

// Natural logarithm of x > 0, rounded outward to a dyadic grid of
// 2^-bits. The true value always lies inside the result.
Enclosure log_enclosure(const Rational& x, unsigned bits);

// Decides lhs < rhs. holds when lhs.hi < rhs.lo, fails when lhs.lo >= rhs.hi.
Verdict compare_less(const Enclosure& lhs, const Enclosure& rhs);
// Decides lhs <= rhs.
Verdict compare_less_equal(const Enclosure& lhs, const Enclosure& rhs);

// Re-evaluates `build(bits)` at increasing precision until the comparison
// is decided or the precision cap is reached. `build` returns the pair
// (lhs, rhs) of enclosures.
template <class Build>
Verdict decide_less(Build&& build, bool or_equal = false) {
  for (unsigned bits : {64u, 256u, 1024u, 4096u, 16384u}) {
    auto [lhs, rhs] = build(bits);
    Verdict v = or_equal ? compare_less_equal(lhs, rhs) : compare_less(lhs, rhs);
    if (v != Verdict::indeterminate) return v;
  }
  return Verdict::indeterminate;
}

}  // namespace sumset
