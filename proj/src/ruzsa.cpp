#include "sumset/ruzsa.hpp"

#include "sumset/error.hpp"
#include "sumset/normalize.hpp"

namespace sumset {

namespace {

Rational triangular(const Integer& k) { return Rational(k * (k - 1)) / 2; }

}  // namespace

KDelta k_delta(const Rational& ratio) {
  if (ratio <= 0) throw Error("k_delta needs a positive ratio, got " + to_string(ratio));
  Integer m = floor(8 * ratio) + 1;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
  Integer k = (1 + s) / 2;
  if (k < 1) k = 1;
  while (k > 1 && triangular(k) > ratio) --k;
  while (triangular(k + 1) <= ratio) ++k;
  if (!k.fits_ulong_p()) throw Error("ratio too large for k_delta");
  KDelta out;
  out.k = k.get_ui();
  out.ratio = ratio;
  out.delta = (ratio - triangular(k)) / Rational(k);
  return out;
}

RuzsaReport ruzsa_bound(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw Error("ruzsa_bound needs nonempty sets");
  RuzsaReport r;
  r.measure_a = a.measure();
  r.measure_b = b.measure();
  if (r.measure_b == 0) throw Error("ruzsa_bound needs lambda(B) > 0");
  r.diameter_b = b.diameter();
  // λ(A) = 0 is the K = 1, δ = 0 solution of the defining relation.
  if (r.measure_a == 0) {
    r.kd.k = 1;
    r.kd.delta = 0;
    r.kd.ratio = 0;
  } else {
    r.kd = k_delta(r.measure_a / r.measure_b);
  }
  r.bound = r.measure_a + min(r.diameter_b, r.kd.k_plus_delta() * r.measure_b);
  r.sumset_measure = minkowski_sum(a, b).measure();
  r.holds = r.sumset_measure >= r.bound;
  r.tight = r.sumset_measure == r.bound;
  return r;
}

RefinedBoundReport refined_bound_check(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw Error("refined_bound_check needs nonempty sets");
  const Rational lb = b.measure();
  if (lb == 0) throw Error("refined_bound_check needs lambda(B) > 0");
  if (b.min() != 0) throw Error("refined_bound_check needs min B = 0");
  const Rational diam = b.diameter();
  const Rational la = a.measure();

  RefinedBoundReport r;
  r.sumset_measure = minkowski_sum(a, b).measure();
  if (la == 0) return r;
  r.kd = k_delta(la / lb);
  // Integer multiples of the period leave the level sets unchanged.
  IntervalSet shifted = translate(a, -Rational(floor(a.min() / diam)) * diam);
  r.k_a = level_sets(shifted, diam).k_max;
  r.k_a_equals_k = r.k_a == r.kd.k;
  r.applicable = r.sumset_measure < la + diam && r.k_a > 0;
  if (!r.applicable) return r;
  const Rational ka(r.k_a);
  r.rhs = (ka + 1) / ka * la + (ka + 1) / 2 * lb;
  r.holds = r.sumset_measure >= r.rhs;
  return r;
}

std::string to_string(DichotomyBranch b) {
  switch (b) {
    case DichotomyBranch::diameter: return "diameter";
    case DichotomyBranch::progression: return "progression";
    case DichotomyBranch::degenerate: return "degenerate";
  }
  return "degenerate";
}

DichotomyReport lemma2_bound(const IntervalSet& e, const IntervalSet& f) {
  if (e.empty() || f.empty()) throw Error("lemma2_bound needs nonempty sets");
  DichotomyReport r;
  r.sumset_measure = minkowski_sum(e, f).measure();
  const Rational le = e.measure();
  const Rational diam = f.diameter();
  if (diam == 0) {
    r.branch = DichotomyBranch::degenerate;
    r.bound = le;
  } else {
    r.k = level_sets(translate(e, -e.min()), diam).k_pointwise;
    const Rational k(r.k);
    r.diameter_bound = le + diam;
    r.progression_bound = (k + 1) / k * le + (k + 1) / 2 * f.measure();
    if (r.progression_bound < r.diameter_bound) {
      r.branch = DichotomyBranch::progression;
      r.bound = r.progression_bound;
    } else {
      r.branch = DichotomyBranch::diameter;
      r.bound = r.diameter_bound;
    }
  }
  r.holds = r.sumset_measure >= r.bound;
  r.tight = r.sumset_measure == r.bound;
  return r;
}

EpsilonProfile epsilon_profile(const IntervalSet& a_in, const IntervalSet& b_in) {
  if (!is_normalized(a_in, b_in)) {
    throw Error("epsilon_profile needs a normalized pair (min B = 0, diam B = 1, min A in [0,1))");
  }
  EpsilonProfile p;
  IntervalSet a = a_in;
  IntervalSet b = b_in;
  if (b.measure() == 0) throw Error("epsilon_profile needs lambda(B) > 0");
  if (a.measure() < b.measure()) {
    NormalizedPair swapped = normalize_pair(b_in, a_in);
    a = swapped.a;
    b = swapped.b;
    p.swapped = true;
  }
  p.b = b.measure();
  const Rational la = a.measure();
  p.kd = k_delta(la / p.b);
  const IntervalSet s = minkowski_sum(a, b);
  p.epsilon = (s.measure() - la) / p.b - p.kd.k_plus_delta();
  p.levels_a = level_sets(a, 1);
  p.levels_s = level_sets(s, 1);
  p.k_a = p.levels_a.k_max;
  p.k_s = p.levels_s.k_max;

  const unsigned k_cap = static_cast<unsigned>(p.kd.k);
  const auto& la_ = p.levels_a;
  const auto& ls = p.levels_s;
  for (unsigned k = 2; k <= k_cap + 1; ++k) {
    p.eps1[k] = (ls.level_measure(k) - la_.level_measure(k - 1)) / p.b;
  }
  for (unsigned k = 1; k <= k_cap; ++k) {
    p.eps2[k] = (ls.level_measure(k) - la_.level_measure(k) - p.b) / p.b;
  }
  for (unsigned k = k_cap + 2; k <= p.k_s; ++k) p.eps3[k] = ls.level_measure(k) / p.b;

  const Rational K(p.kd.k);
  Rational weighted = 0;
  Rational sum3 = 0;
  for (const auto& [k, v] : p.eps3) sum3 += v;
  weighted += sum3;
  for (unsigned k = 1; k <= k_cap; ++k) {
    weighted += Rational(k) / K * (p.eps1.at(k + 1) + p.eps2.at(k_cap + 1 - k));
  }
  p.identity_residual = p.epsilon - weighted;

  p.nonnegative = true;
  for (const auto* m : {&p.eps1, &p.eps2, &p.eps3}) {
    for (const auto& [k, v] : *m) {
      if (v < 0) p.nonnegative = false;
    }
  }
  p.bounds_hold = sum3 <= p.epsilon;
  for (const auto& [k, v] : p.eps1) {
    if (v > K * p.epsilon / Rational(k - 1)) p.bounds_hold = false;
  }
  for (const auto& [k, v] : p.eps2) {
    if (v > K * p.epsilon / Rational(k_cap + 1 - k)) p.bounds_hold = false;
  }
  return p;
}

bool crude_bound_holds(const EpsilonProfile& profile, const Rational& rho0) {
  const Rational limit = Rational(profile.kd.k) * profile.epsilon;
  for (const auto* m : {&profile.eps1, &profile.eps2, &profile.eps3}) {
    for (const auto& [k, v] : *m) {
      if (v > limit) return false;
    }
  }
  return limit <= rho0 / profile.b;
}

TopLevelReport ak_identity_check(const EpsilonProfile& profile, const LevelDecomposition& levels_a,
                                 const Arc& hull_top_level) {
  TopLevelReport r;
  const unsigned k_cap = static_cast<unsigned>(profile.kd.k);
  // K = 1 cannot occur once λ(A) >= λ(B); a hand-built profile gets no verdict.
  if (k_cap < 2 || levels_a.k_max != k_cap || profile.k_a != k_cap) return r;
  r.applicable = true;
  const Rational K(profile.kd.k);
  const Rational& b = profile.b;
  const Rational& eps = profile.epsilon;
  const Rational& delta = profile.kd.delta;

  Rational weighted = 0;
  for (unsigned k = 1; k + 1 <= k_cap; ++k) {
    weighted += Rational(k) * (profile.eps1.at(k + 1) - profile.eps2.at(k + 1));
  }
  r.top_level_measure = levels_a.level_measure(k_cap);
  r.predicted_measure = delta * b + weighted / K * b;
  r.residual = r.top_level_measure - r.predicted_measure;
  r.hull_length = hull_top_level.length;

  r.refined_upper_bound = r.hull_length <= r.predicted_measure + profile.eps2.at(k_cap) * b;
  r.upper_bound = r.hull_length <= delta * b + 2 * eps * b;

  Rational harmonic = 0;
  for (unsigned k = 1; k < k_cap; ++k) harmonic += Rational(1) / k;
  r.harmonic_lower_bound = delta * b - (K * harmonic - (K - 1)) * eps * b <= r.hull_length;

  r.lower_bound = decide_less(
      [&](unsigned bits) {
        Enclosure log_k = log_enclosure(K, bits);
        Enclosure lhs = delta * b + (-(K * eps * b) * (log_k + Enclosure::exact(-1)));
        return std::pair{lhs, Enclosure::exact(r.hull_length)};
      },
      /*or_equal=*/true);
  return r;
}

TopLevelReport ak_identity_check(const EpsilonProfile& profile) {
  const unsigned k_cap = static_cast<unsigned>(profile.kd.k);
  if (k_cap < 2 || profile.levels_a.k_max != k_cap) return {};
  const TorusSet& top = profile.levels_a.levels[k_cap - 1];
  if (top.is_full()) return {};
  return ak_identity_check(profile, profile.levels_a, arc_hull(top));
}

}  // namespace sumset
