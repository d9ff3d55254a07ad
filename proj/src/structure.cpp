#include "sumset/structure.hpp"

#include "sumset/error.hpp"

namespace sumset {

const Rational& rho0() {
  static const Rational value = Rational(31) * pow10(-1550);
  return value;
}

void validate_equality_params(const StructureParams& p) {
  if (p.k < 1) throw Error("K must be at least 1");
  if (p.delta < 0 || p.delta >= 1) throw Error("delta must lie in [0, 1), got " + to_string(p.delta));
  if (p.b <= 0) throw Error("b must be positive");
  if (p.b_plus < 0 || p.b_minus < 0) throw Error("b_plus and b_minus must be nonnegative");
  if (p.b_plus + p.b_minus != p.b) throw Error("equality structures need b_plus + b_minus = b");
  if (p.diam <= 0) throw Error("diameter must be positive");
  if ((Rational(p.k) + p.delta) * p.b >= p.diam) throw Error("equality structures need (K+delta)b < D");
}

IntervalSet a0_shape(const StructureParams& p) {
  std::vector<Interval> floors;
  const Rational K(p.k);
  for (unsigned long k = 1; k <= p.k; ++k) {
    const Rational km1(k - 1);
    floors.push_back({km1 * (p.diam - p.b_minus), km1 * p.diam + (K - Rational(k)) * p.b_plus + p.delta * p.b});
  }
  return IntervalSet::normalize(std::move(floors));
}

EqualityStructures build_equality_structures(const StructureParams& p) {
  validate_equality_params(p);
  EqualityStructures out;
  out.b0 = IntervalSet::normalize({{0, p.b_plus}, {p.diam - p.b_minus, p.diam}});
  out.a0 = a0_shape(p);
  const Rational K(p.k);
  const Rational expected = p.b * (K * (K - 1) / 2 + K * p.delta);
  if (out.a0.measure() != expected) throw Error("internal: lambda(A_0) differs from b(K(K-1)/2 + K delta)");
  if (minkowski_sum(out.a0, out.b0).measure() != expected + (K + p.delta) * p.b) {
    throw Error("internal: A_0 + B_0 is not an equality case");
  }
  return out;
}

IntervalSet build_extremal_family(const StructureParams& p, const Rational& epsilon, const Rational& eps_prime,
                                  unsigned long i) {
  validate_equality_params(p);
  if (p.b_minus != 0 || p.b_plus != p.b) throw Error("extremal family needs B = [0,b] ∪ {D}");
  if (eps_prime < 0 || eps_prime > epsilon) throw Error("eps_prime must lie in [0, eps]");
  if (i < 1 || i > p.k) throw Error("family index must lie in 1..K");
  const Rational floor_start = Rational(i - 1) * p.diam;
  const Rational floor_end = floor_start + Rational(p.k - i) * p.b + p.delta * p.b;
  std::vector<Interval> parts = a0_shape(p).components();
  parts.push_back({floor_end, floor_end + eps_prime * p.b});
  parts.push_back({floor_start - (epsilon - eps_prime) * p.b, floor_start});
  return IntervalSet::normalize(std::move(parts));
}

bool HypothesisReport::theorem_hypotheses_hold() const {
  for (Verdict v : {b_below_projection, cube, log, rho, main_condition}) {
    if (v != Verdict::holds) return false;
  }
  return true;
}

bool HypothesisReport::all_hold() const { return theorem_hypotheses_hold() && weak_condition == Verdict::holds; }

namespace {

HypothesisReport evaluate_hypotheses(const IntervalSet& a, const Rational& b, const Rational& la, const KDelta& kd,
                                     const Rational& eps, const Rational& diam) {
  HypothesisReport h;
  h.b = b;
  h.measure_a = la;
  h.kd = kd;
  h.epsilon = eps;
  h.top_mod_measure = project(a, diam).measure();
  h.b_below_projection = verdict_of(b <= h.top_mod_measure);

  const Rational K(kd.k);
  const Rational& delta = kd.delta;
  h.cube = verdict_of(eps < pow(delta / (3 * K), 3));
  h.rho = verdict_of(eps * K * b < rho0());
  if (kd.k == 1) {
    // log 1 = 0: the threshold is infinite.
    h.log = Verdict::holds;
  } else {
    h.log = decide_less([&](unsigned bits) {
      Enclosure lhs = (K * K * K * eps) * log_enclosure(K, bits);
      return std::pair{lhs, Enclosure::exact(1 - delta)};
    });
  }
  const Rational base = (K + delta) * b;
  h.main_condition = decide_less([&](unsigned bits) {
    Enclosure coeff = Rational(12) + (K * K) * log_enclosure(K, bits);
    return std::pair{base + (eps * b) * coeff, Enclosure::exact(diam)};
  });
  h.weak_condition = decide_less([&](unsigned bits) {
    Enclosure log_k = log_enclosure(K, bits);
    Enclosure log_4 = log_enclosure(4, bits);
    Enclosure inner = K * (Rational(1) + log_4) - log_k + (Rational(-7) + log_4);
    Enclosure coeff = Rational(8) + ((K * K) * log_k - K * inner);
    return std::pair{base + (eps * b) * coeff, Enclosure::exact(diam)};
  });
  return h;
}

}  // namespace

HypothesisReport hypothesis_check(const IntervalSet& a, const IntervalSet& b) {
  if (!is_normalized(a, b)) throw Error("hypothesis_check needs a normalized pair");
  const Rational lb = b.measure();
  const Rational la = a.measure();
  if (lb == 0 || la == 0) throw Error("hypothesis_check needs sets of positive measure");
  const KDelta kd = k_delta(la / lb);
  const Rational eps = (minkowski_sum(a, b).measure() - la) / lb - kd.k_plus_delta();
  if (eps < 0) {
    throw Error("epsilon = " + to_string(eps) + " < 0: sumset below lambda(A)+(K+delta)lambda(B)");
  }
  return evaluate_hypotheses(a, lb, la, kd, eps, 1);
}

BConclusion conclusion_check_B(const IntervalSet& b, const Rational& epsilon) {
  if (b.empty()) throw Error("conclusion_check_B needs a nonempty set");
  const Rational origin = b.min();
  const Rational diam = b.diameter();
  const auto& parts = b.components();
  // Largest gap; the leftmost one wins ties.
  Rational gap_lo = diam;
  Rational gap_hi = diam;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    Rational len = parts[i + 1].lo - parts[i].hi;
    if (len > gap_hi - gap_lo) {
      gap_lo = parts[i].hi - origin;
      gap_hi = parts[i + 1].lo - origin;
    }
  }
  BConclusion out;
  out.best = {origin, gap_lo, diam - gap_hi};
  out.limit = b.measure() * (1 + epsilon);
  if (out.best.b_plus + out.best.b_minus <= out.limit) out.witness = out.best;
  return out;
}

AConclusion conclusion_check_A(const IntervalSet& a, const StructureParams& p, const Rational& epsilon) {
  if (a.empty()) throw Error("conclusion_check_A needs a nonempty set");
  if (epsilon < 0) throw Error("conclusion_check_A needs epsilon >= 0");
  AConclusion out;
  out.target = minkowski_sum(a0_shape(p), IntervalSet::interval(0, epsilon * p.b));
  out.feasible = feasible_translates(a, out.target);
  if (!out.feasible.empty()) out.translate = out.feasible.min();
  return out;
}

std::string to_string(StructureStatus s) {
  switch (s) {
    case StructureStatus::pass: return "pass";
    case StructureStatus::hypotheses_fail: return "hypotheses-fail";
    case StructureStatus::conclusion_fail: return "conclusion-fail";
    case StructureStatus::error: return "error";
  }
  return "error";
}

StructureReport verify_main_theorem(const IntervalSet& a_in, const IntervalSet& b_in, bool explore) {
  StructureReport r;
  r.explore = explore;
  auto fail = [&](std::string stage, std::string detail) {
    r.failures.push_back({std::move(stage), std::move(detail)});
  };

  try {
    r.normalized = normalize_pair(a_in, b_in);
  } catch (const Error& e) {
    fail("normalize", e.what());
    return r;
  }
  const IntervalSet& a = r.normalized.a;
  const IntervalSet& b = r.normalized.b;
  const Rational lb = b.measure();
  const Rational la = a.measure();
  if (lb == 0 || la == 0) {
    fail("measure", "both sets need positive measure");
    return r;
  }

  const KDelta kd = k_delta(la / lb);
  r.epsilon = (minkowski_sum(a, b).measure() - la) / lb - kd.k_plus_delta();
  r.params.k = kd.k;
  r.params.delta = kd.delta;
  r.params.b = lb;
  r.params.diam = 1;

  if (la >= lb) {
    r.profile = epsilon_profile(a, b);
    r.top_level = ak_identity_check(*r.profile);
  }

  if (r.epsilon >= 0) {
    r.hypotheses = evaluate_hypotheses(a, lb, la, kd, r.epsilon, 1);
  } else {
    fail("hypotheses", "epsilon = " + to_string(r.epsilon) +
                           " < 0: (K+delta)lambda(B) >= D_B, outside the stability regime");
  }
  const bool in_region = r.hypotheses && r.hypotheses->theorem_hypotheses_hold();

  if (!in_region && !explore) {
    r.status = StructureStatus::hypotheses_fail;
    return r;
  }

  BConclusion bc = conclusion_check_B(b, r.epsilon);
  r.params.b_plus = bc.best.b_plus;
  r.params.b_minus = bc.best.b_minus;
  if (bc.witness) {
    r.b_witness = bc.witness;
    r.b_witness_original = r.normalized.b_map.invert(bc.witness->translate);
  } else {
    fail("conclusion_B", "best split b_plus + b_minus = " + to_string(bc.best.b_plus + bc.best.b_minus) +
                             " exceeds lambda(B)(1+eps) = " + to_string(bc.limit));
  }

  if (r.epsilon >= 0) {
    AConclusion ac = conclusion_check_A(a, r.params, r.epsilon);
    if (ac.translate) {
      r.a_witness = ac.translate;
      r.a_witness_original = r.normalized.a_map().invert(*ac.translate);
    } else {
      fail("conclusion_A", "no translate of A_0 + [0, eps b] contains A (feasible set empty)");
    }
  }

  if (r.profile && r.hypotheses && r.hypotheses->rho == Verdict::holds) {
    r.crude_bound = crude_bound_holds(*r.profile, rho0());
  }
  if (r.epsilon == 0 && r.b_witness) r.a0_measure_matches = a0_shape(r.params).measure() == la;

  if (!in_region) {
    r.status = StructureStatus::hypotheses_fail;
    return r;
  }
  r.status = StructureStatus::pass;
  auto hard = [&](bool ok, const char* stage, const char* detail) {
    if (ok) return;
    fail(stage, detail);
    r.status = StructureStatus::conclusion_fail;
  };
  hard(r.b_witness.has_value(), "theorem", "B witness missing on an in-hypothesis instance");
  hard(r.a_witness.has_value(), "theorem", "A witness missing on an in-hypothesis instance");
  hard(r.profile && r.profile->k_a_equals_k(), "profile", "K_A != K on an in-hypothesis instance");
  if (r.profile) {
    hard(r.profile->identity_residual == 0, "profile", "weighted defect identity residual is nonzero");
    hard(r.profile->nonnegative, "profile", "negative defect coefficient");
    hard(r.profile->bounds_hold, "profile", "defect coefficient above its bound");
    hard(r.crude_bound, "profile", "defect coefficient above K eps or rho0/b");
  }
  if (r.top_level && r.top_level->applicable) {
    hard(r.top_level->residual == 0, "top_level", "top level measure identity residual is nonzero");
    hard(r.top_level->upper_bound, "top_level", "hull of the top level exceeds delta b + 2 eps b");
  }
  hard(r.a0_measure_matches, "equality", "lambda(A_0) != lambda(A) in the equality case");
  return r;
}

}  // namespace sumset
