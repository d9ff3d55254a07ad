#include "sumset/interval_set.hpp"

#include <algorithm>

#include "sumset/error.hpp"

namespace sumset {

IntervalSet IntervalSet::normalize(std::vector<Interval> raw) {
  for (const auto& iv : raw) {
    if (iv.lo > iv.hi) {
      throw Error("interval with lo > hi: [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]");
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = std::move(iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::from(std::initializer_list<std::initializer_list<Rational>> raw) {
  std::vector<Interval> parts;
  for (const auto& pair : raw) {
    if (pair.size() != 2) throw Error("interval literal needs exactly two endpoints");
    parts.push_back({*pair.begin(), *(pair.begin() + 1)});
  }
  return normalize(std::move(parts));
}

IntervalSet IntervalSet::interval(const Rational& lo, const Rational& hi) { return normalize({{lo, hi}}); }

Rational IntervalSet::measure() const {
  Rational total = 0;
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

Rational IntervalSet::diameter() const {
  if (parts_.empty()) throw Error("diameter of the empty set");
  return parts_.back().hi - parts_.front().lo;
}

const Rational& IntervalSet::min() const {
  if (parts_.empty()) throw Error("min of the empty set");
  return parts_.front().lo;
}

const Rational& IntervalSet::max() const {
  if (parts_.empty()) throw Error("max of the empty set");
  return parts_.back().hi;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

bool IntervalSet::includes(const IntervalSet& other) const {
  // Each component of `other` is connected, so it must sit inside one of ours.
  for (const auto& iv : other.parts_) {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), iv.lo,
                               [](const Rational& v, const Interval& c) { return v < c.lo; });
    if (it == parts_.begin()) return false;
    if (std::prev(it)->hi < iv.hi) return false;
  }
  return true;
}

std::string IntervalSet::debug_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ", ";
    out += "[" + to_string(parts_[i].lo) + ", " + to_string(parts_[i].hi) + "]";
  }
  return out + "}";
}

IntervalSet set_union(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Interval> all(s.components());
  all.insert(all.end(), t.components().begin(), t.components().end());
  return IntervalSet::normalize(std::move(all));
}

IntervalSet intersection(const IntervalSet& s, const IntervalSet& t) {
  std::vector<Interval> out;
  const auto& a = s.components();
  const auto& b = t.components();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = max(a[i].lo, b[j].lo);
    const Rational& hi = min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) ++i;
    else ++j;
  }
  return IntervalSet::normalize(std::move(out));
}

IntervalSet difference(const IntervalSet& s, const IntervalSet& t) {
  // Closure of the complement of t, ignoring its isolated points (they carry
  // no measure and their complement is dense).
  std::vector<Interval> out;
  std::vector<const Interval*> solid;
  for (const auto& iv : t.components()) {
    if (!iv.is_point()) solid.push_back(&iv);
  }
  for (const auto& piece : s.components()) {
    Rational cursor = piece.lo;
    for (const Interval* cut : solid) {
      if (cut->hi < cursor) continue;
      if (cut->lo > piece.hi) break;
      if (cut->lo >= cursor) out.push_back({cursor, cut->lo});
      cursor = cut->hi;
      if (cursor > piece.hi) break;
    }
    if (cursor <= piece.hi) out.push_back({cursor, piece.hi});
  }
  // Degenerate leftovers are genuine only when they avoid t entirely.
  std::vector<Interval> kept;
  for (auto& iv : out) {
    if (!iv.is_point() || !t.contains(iv.lo)) kept.push_back(std::move(iv));
  }
  return IntervalSet::normalize(std::move(kept));
}

IntervalSet symmetric_difference(const IntervalSet& s, const IntervalSet& t) {
  return set_union(difference(s, t), difference(t, s));
}

IntervalSet boolean_op(const IntervalSet& s, const IntervalSet& t, BoolOp op) {
  switch (op) {
    case BoolOp::set_union: return set_union(s, t);
    case BoolOp::intersection: return intersection(s, t);
    case BoolOp::difference: return difference(s, t);
    case BoolOp::symmetric_difference: return symmetric_difference(s, t);
  }
  throw Error("unknown boolean operation");
}

IntervalSet minkowski_sum(const IntervalSet& s, const IntervalSet& t) {
  if (s.empty() || t.empty()) throw Error("Minkowski sum with an empty operand");
  std::vector<Interval> pairs;
  pairs.reserve(s.size() * t.size());
  for (const auto& a : s.components()) {
    for (const auto& b : t.components()) pairs.push_back({a.lo + b.lo, a.hi + b.hi});
  }
  return IntervalSet::normalize(std::move(pairs));
}

IntervalSet translate(const IntervalSet& s, const Rational& t) {
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& iv : s.components()) out.push_back({iv.lo + t, iv.hi + t});
  return IntervalSet::normalize(std::move(out));
}

IntervalSet scale(const IntervalSet& s, const Rational& c) {
  if (c == 0) throw Error("scale factor must be nonzero");
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& iv : s.components()) {
    if (c > 0) out.push_back({iv.lo * c, iv.hi * c});
    else out.push_back({iv.hi * c, iv.lo * c});
  }
  return IntervalSet::normalize(std::move(out));
}

IntervalSet reflect(const IntervalSet& s) {
  if (s.empty()) throw Error("reflection of the empty set");
  return translate(scale(s, -1), s.max());
}

IntervalSet feasible_translates(const IntervalSet& a, const IntervalSet& v) {
  if (a.empty() || v.empty()) throw Error("feasible_translates with an empty operand");
  IntervalSet feasible;
  bool first = true;
  for (const auto& piece : a.components()) {
    std::vector<Interval> options;
    for (const auto& room : v.components()) {
      if (piece.length() <= room.length()) options.push_back({piece.hi - room.hi, piece.lo - room.lo});
    }
    IntervalSet here = IntervalSet::normalize(std::move(options));
    feasible = first ? std::move(here) : intersection(feasible, here);
    first = false;
    if (feasible.empty()) break;
  }
  return feasible;
}

}  // namespace sumset
