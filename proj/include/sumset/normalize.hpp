#pragma once

#include "sumset/interval_set.hpp"

namespace sumset {

// x ↦ scale·x + offset, with scale > 0.
struct AffineMap {
  Rational scale = 1;
  Rational offset = 0;

  Rational apply(const Rational& x) const { return scale * x + offset; }
  Rational invert(const Rational& y) const { return (y - offset) / scale; }
  IntervalSet apply(const IntervalSet& s) const;
};

// A pair brought to the canonical frame min B = 0, diam B = 1 and
// min A ∈ [0, 1). `b_map` sends the original B (and A, before the integer
// shift) to the canonical frame; A additionally moves by `a_shift`.
struct NormalizedPair {
  IntervalSet a;
  IntervalSet b;
  AffineMap b_map;
  Integer a_shift = 0;

  AffineMap a_map() const { return {b_map.scale, b_map.offset + Rational(a_shift)}; }
};

// Throws when either set is empty or diam B = 0.
NormalizedPair normalize_pair(const IntervalSet& a, const IntervalSet& b);

bool is_normalized(const IntervalSet& a, const IntervalSet& b);

}  // namespace sumset
