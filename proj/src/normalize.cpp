#include "sumset/normalize.hpp"

#include "sumset/error.hpp"

namespace sumset {

IntervalSet AffineMap::apply(const IntervalSet& s) const { return sumset::translate(sumset::scale(s, scale), offset); }

NormalizedPair normalize_pair(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw Error("normalize_pair needs nonempty sets");
  const Rational diam = b.diameter();
  if (diam == 0) throw Error("normalize_pair needs diam(B) > 0");
  NormalizedPair out;
  out.b_map.scale = 1 / diam;
  out.b_map.offset = -b.min() / diam;
  out.b = out.b_map.apply(b);
  IntervalSet a1 = out.b_map.apply(a);
  out.a_shift = -floor(a1.min());
  out.a = translate(a1, Rational(out.a_shift));
  return out;
}

bool is_normalized(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) return false;
  return b.min() == 0 && b.diameter() == 1 && a.min() >= 0 && a.min() < 1;
}

}  // namespace sumset
