#pragma once

#include <optional>
#include <vector>

#include "sumset/interval_set.hpp"

namespace sumset {

// Closed subset of the circle R / period·Z, stored as closed arcs inside
// [0, period]. A set wrapping through 0 has one component starting at 0 and
// one ending at period; the point `period` itself is always represented by 0.
class TorusSet {
 public:
  TorusSet() = default;

  // Arcs must lie in [0, period]. Throws on a nonpositive period.
  static TorusSet from_arcs(const Rational& period, const IntervalSet& arcs);
  static TorusSet full(const Rational& period);

  const Rational& period() const { return period_; }
  const IntervalSet& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool is_full() const;
  // Haar measure, normalized so the whole circle has measure `period`.
  Rational measure() const { return arcs_.measure(); }
  bool contains(const Rational& x) const;
  // Subset test on the circle.
  bool includes(const TorusSet& other) const;

  friend bool operator==(const TorusSet&, const TorusSet&) = default;

 private:
  TorusSet(Rational period, IntervalSet arcs) : period_(std::move(period)), arcs_(std::move(arcs)) {}
  Rational period_ = 1;
  IntervalSet arcs_;
};

// Closed arc [start, start + length] taken modulo the period.
struct Arc {
  Rational start;
  Rational length;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Level sets of a bounded E ⊂ R+ modulo a period: levels[k-1] is the closure
// of the residues covered by at least k translates of E's fragments on a set
// of positive measure.
struct LevelDecomposition {
  Rational period;
  std::vector<TorusSet> levels;
  // Deepest level of positive measure.
  unsigned k_max = 0;
  // max over x in [0, period) of #{n >= 0 : x + n·period ∈ E}; may exceed
  // k_max when the extra hits happen on a null set.
  unsigned k_pointwise = 0;

  // Measure of level k (k >= 1); zero past k_max.
  Rational level_measure(unsigned k) const;
  Rational total_measure() const;
};

TorusSet project(const IntervalSet& s, const Rational& period);
LevelDecomposition level_sets(const IntervalSet& e, const Rational& period);
// Minimal closed arc covering T. Ties go to the smallest start in [0, period).
Arc arc_hull(const TorusSet& t);
// Image of T under x ↦ n·x mod period.
TorusSet dilate(const TorusSet& t, unsigned long n);
// Sumset on the circle.
TorusSet torus_sum(const TorusSet& s, const TorusSet& t);

struct Dilation {
  unsigned long n;
  Arc arc;
};

// Smallest n <= n_max whose dilate fits in an arc of length μ(T) + slack.
std::optional<Dilation> find_small_dilation(const TorusSet& t, unsigned long n_max, const Rational& slack);

}  // namespace sumset
