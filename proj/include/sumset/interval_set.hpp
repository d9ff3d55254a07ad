#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "sumset/rational.hpp"

namespace sumset {

// Closed interval [lo, hi]; lo == hi is an isolated point.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of closed intervals with rational endpoints, kept in canonical
// form: components sorted, pairwise separated by gaps of positive length.
// Values are immutable once built.
class IntervalSet {
 public:
  IntervalSet() = default;

  // Sorts and merges overlapping or touching intervals. Throws on lo > hi.
  static IntervalSet normalize(std::vector<Interval> raw);
  static IntervalSet from(std::initializer_list<std::initializer_list<Rational>> raw);
  static IntervalSet interval(const Rational& lo, const Rational& hi);
  static IntervalSet point(const Rational& x) { return interval(x, x); }

  const std::vector<Interval>& components() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  Rational measure() const;
  // Throws on the empty set.
  Rational diameter() const;
  const Rational& min() const;
  const Rational& max() const;
  bool contains(const Rational& x) const;
  // True when `other` is a subset of this set.
  bool includes(const IntervalSet& other) const;

  std::string debug_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  explicit IntervalSet(std::vector<Interval> canonical) : parts_(std::move(canonical)) {}
  std::vector<Interval> parts_;
};

enum class BoolOp { set_union, intersection, difference, symmetric_difference };

IntervalSet boolean_op(const IntervalSet& s, const IntervalSet& t, BoolOp op);
IntervalSet set_union(const IntervalSet& s, const IntervalSet& t);
IntervalSet intersection(const IntervalSet& s, const IntervalSet& t);
// Closure of the measure-theoretic difference: boundary points shared with
// `t` survive only as endpoints of surviving intervals.
IntervalSet difference(const IntervalSet& s, const IntervalSet& t);
IntervalSet symmetric_difference(const IntervalSet& s, const IntervalSet& t);

// Pairwise sums of components followed by a merge sweep. Both operands must
// be nonempty.
IntervalSet minkowski_sum(const IntervalSet& s, const IntervalSet& t);

IntervalSet translate(const IntervalSet& s, const Rational& t);
// c != 0; negative factors reverse the order.
IntervalSet scale(const IntervalSet& s, const Rational& c);
// sup S - S.
IntervalSet reflect(const IntervalSet& s);

// Exactly {t : A ⊆ t + V}. Empty result certifies that no translate works.
IntervalSet feasible_translates(const IntervalSet& a, const IntervalSet& v);

}  // namespace sumset
