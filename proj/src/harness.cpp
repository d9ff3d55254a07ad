#include "sumset/harness.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "sumset/error.hpp"

namespace sumset {

std::string to_string(PerturbationMode m) {
  switch (m) {
    case PerturbationMode::equality: return "equality";
    case PerturbationMode::perturbed: return "perturbed";
    case PerturbationMode::adversarial: return "adversarial";
  }
  return "perturbed";
}

PerturbationMode parse_mode(const std::string& text) {
  if (text == "equality") return PerturbationMode::equality;
  if (text == "perturbed") return PerturbationMode::perturbed;
  if (text == "adversarial") return PerturbationMode::adversarial;
  throw Error("unknown perturbation mode '" + text + "'");
}

void validate(const InstanceSpec& spec) {
  if (spec.k_min < 1 || spec.k_min > spec.k_max) throw Error("invalid K range");
  if (spec.denominator_bound < 2) throw Error("denominator bound must be at least 2");
  if (spec.perturbation.hole_budget <= 0 || spec.perturbation.shift_budget <= 0) {
    throw Error("perturbation budgets must be positive");
  }
  // The smallest floor has length >= δb >= 1/N^2; holes must fit strictly inside.
  const Rational n(spec.denominator_bound);
  if (spec.perturbation.hole_budget * 10 >= 1 / (n * n)) {
    throw Error("hole budget must stay below a tenth of the smallest floor (1/N^2)");
  }
  if (Rational(spec.k_max) * 2 >= n) throw Error("denominator bound too small for the K range");
}

std::uint64_t instance_seed(std::uint64_t corpus_seed, std::size_t index) {
  // splitmix64 finalizer
  std::uint64_t z = corpus_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

StructureParams random_params(Rng& rng, const InstanceSpec& spec, bool allow_zero_delta) {
  const long n = static_cast<long>(spec.denominator_bound);
  StructureParams p;
  p.k = static_cast<unsigned long>(uniform(rng, spec.k_min, spec.k_max));
  p.delta = make_rational(uniform(rng, allow_zero_delta ? 0 : 1, n - 1), n);
  // Largest t with (K+δ)·t/N < 1.
  const Rational kd = Rational(p.k) + p.delta;
  long t_max = ceil(Rational(n) / kd).get_si() - 1;
  if (t_max < 1) throw Error("denominator bound too small to fit (K+delta)b < 1");
  long t = uniform(rng, 1, t_max);
  long j = uniform(rng, 0, t);
  p.b_plus = make_rational(j, n);
  p.b_minus = make_rational(t - j, n);
  p.b = make_rational(t, n);
  p.diam = 1;
  return p;
}

// Magnitude in (0, budget], in steps of budget/1000.
Rational draw(Rng& rng, const Rational& budget) { return budget * make_rational(uniform(rng, 1, 1000), 1000); }

std::vector<Interval> floors_of(const StructureParams& p) { return a0_shape(p).components(); }

// Isolating window around floor k: floors sit at least 1-(K+δ)b apart.
Interval floor_window(const StructureParams& p, const Interval& floor) {
  Rational margin = (1 - (Rational(p.k) + p.delta) * p.b) / 2;
  return {floor.lo - margin, floor.hi + margin};
}

IntervalSet shift_floor(const IntervalSet& a, const StructureParams& p, const Interval& floor, const Rational& s) {
  Interval w = floor_window(p, floor);
  IntervalSet window = IntervalSet::interval(w.lo, w.hi);
  IntervalSet part = intersection(a, window);
  IntervalSet rest = difference(a, window);
  return set_union(rest, translate(part, s));
}

IntervalSet punch(const IntervalSet& s, const Interval& piece, const Rational& h, Rng& rng) {
  Rational pos = piece.lo + piece.length() * make_rational(uniform(rng, 100, 800), 1000);
  return difference(s, IntervalSet::interval(pos, pos + h));
}

void apply_perturbations(Rng& rng, Instance& inst, const Rational& hole_unit, const Rational& shift_unit) {
  const StructureParams& p = inst.params;
  const auto floors = floors_of(p);
  std::vector<Interval> b_pieces;
  for (const auto& piece : inst.b.components()) {
    if (!piece.is_point()) b_pieces.push_back(piece);
  }
  const int count = static_cast<int>(uniform(rng, 1, 3));
  for (int op = 0; op < count; ++op) {
    const long kind = uniform(rng, 0, 4);
    const std::size_t f = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(floors.size()) - 1));
    const Interval& floor = floors[f];
    const std::string tag = "floor " + std::to_string(f + 1);
    switch (kind) {
      case 0: {
        Rational h = draw(rng, hole_unit);
        inst.a = punch(inst.a, floor, h, rng);
        inst.perturbations.push_back("hole " + to_string(h) + " in A " + tag);
        break;
      }
      case 1: {
        const Interval& piece = b_pieces[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(b_pieces.size()) - 1))];
        Rational h = draw(rng, hole_unit);
        inst.b = punch(inst.b, piece, h, rng);
        inst.perturbations.push_back("hole " + to_string(h) + " in B");
        break;
      }
      case 2: {
        Rational right = uniform(rng, 0, 1) ? draw(rng, hole_unit) : Rational(0);
        Rational left = draw(rng, hole_unit);
        inst.a = set_union(inst.a, IntervalSet::normalize({{floor.hi, floor.hi + right}, {floor.lo - left, floor.lo}}));
        inst.perturbations.push_back("stretch A " + tag + " by " + to_string(left) + " left, " + to_string(right) +
                                     " right");
        break;
      }
      case 3: {
        Rational s = draw(rng, shift_unit);
        if (uniform(rng, 0, 1)) s = -s;
        inst.a = shift_floor(inst.a, p, floor, s);
        inst.perturbations.push_back("shift A " + tag + " by " + to_string(s));
        break;
      }
      default: {
        Rational s = draw(rng, shift_unit);
        // Grow one of B's two blocks inward; min B and max B stay put.
        if (inst.b.components().front().hi + s < inst.b.components().back().lo && uniform(rng, 0, 1)) {
          Rational end = inst.b.components().front().hi;
          inst.b = set_union(inst.b, IntervalSet::interval(end, end + s));
          inst.perturbations.push_back("extend B left block by " + to_string(s));
        } else {
          Rational start = inst.b.components().back().lo;
          inst.b = set_union(inst.b, IntervalSet::interval(start - s, start));
          inst.perturbations.push_back("extend B right block by " + to_string(s));
        }
        break;
      }
    }
  }
}

bool in_hypothesis_region(const IntervalSet& a, const IntervalSet& b) {
  NormalizedPair np = normalize_pair(a, b);
  if (np.a.measure() == 0 || np.b.measure() == 0) return false;
  try {
    return hypothesis_check(np.a, np.b).theorem_hypotheses_hold();
  } catch (const Error&) {
    return false;
  }
}

Instance base_instance(const StructureParams& p) {
  Instance inst;
  inst.params = p;
  EqualityStructures eq = build_equality_structures(p);
  inst.a = eq.a0;
  inst.b = eq.b0;
  return inst;
}

}  // namespace

Instance generate_instance(const InstanceSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const auto& pert = spec.perturbation;
  switch (pert.mode) {
    case PerturbationMode::equality: {
      Instance inst = base_instance(random_params(rng, spec, false));
      inst.mode = pert.mode;
      return inst;
    }
    case PerturbationMode::perturbed: {
      StructureParams p = random_params(rng, spec, false);
      Rational hole = pert.hole_budget;
      Rational shift = pert.shift_budget;
      for (int attempt = 0; attempt < 12; ++attempt) {
        Instance inst = base_instance(p);
        inst.mode = pert.mode;
        apply_perturbations(rng, inst, hole, shift);
        if (in_hypothesis_region(inst.a, inst.b)) return inst;
        hole /= 10;
        shift /= 10;
      }
      throw Error("could not place a perturbed instance inside the hypothesis region");
    }
    case PerturbationMode::adversarial: {
      const bool zero_delta = uniform(rng, 0, 1) == 1;
      StructureParams p = random_params(rng, spec, false);
      if (zero_delta) {
        p.delta = 0;
        Instance inst = base_instance(p);
        inst.mode = pert.mode;
        inst.perturbations.push_back("delta forced to 0");
        apply_perturbations(rng, inst, pert.hole_budget, pert.shift_budget);
        return inst;
      }
      // Perturbations far above the admissible defect scale.
      const Rational n(spec.denominator_bound);
      Instance inst = base_instance(p);
      inst.mode = pert.mode;
      apply_perturbations(rng, inst, 1 / (n * n * 20), 1 / (n * n * 20));
      return inst;
    }
  }
  throw Error("unknown perturbation mode");
}

namespace {

std::string digest(const StructureReport& r) {
  std::string d = to_string(r.status) + "|" + to_string(r.epsilon) + "|" + std::to_string(r.params.k) + "|" +
                  to_string(r.params.delta);
  if (r.hypotheses) {
    const auto& h = *r.hypotheses;
    for (Verdict v : {h.b_below_projection, h.cube, h.log, h.rho, h.main_condition, h.weak_condition}) {
      d += "|" + to_string(v);
    }
  }
  d += r.b_witness ? "|B:" + to_string(r.b_witness->b_plus + r.b_witness->b_minus) : std::string("|B:none");
  d += r.a_witness ? "|A:yes" : "|A:none";
  return d;
}

}  // namespace

InstanceOutcome evaluate_instance(const Instance& instance, std::size_t index, std::uint64_t seed) {
  InstanceOutcome out;
  out.index = index;
  out.seed = seed;
  out.instance = instance;
  out.report = verify_main_theorem(instance.a, instance.b, /*explore=*/true);
  auto hard = [&](bool ok, const std::string& what) {
    if (!ok) out.hard_failures.push_back(what);
  };

  const auto& r = out.report;
  if (r.status == StructureStatus::error) {
    for (const auto& f : r.failures) hard(false, "pipeline error at " + f.stage + ": " + f.detail);
    return out;
  }
  const IntervalSet& a = r.normalized.a;
  const IntervalSet& b = r.normalized.b;
  const IntervalSet s = minkowski_sum(a, b);
  out.level_residual_a = level_sets(a, 1).total_measure() - a.measure();
  out.level_residual_s = level_sets(s, 1).total_measure() - s.measure();
  hard(out.level_residual_a == 0 && out.level_residual_s == 0, "level-set measure identity residual nonzero");
  if (r.profile && r.profile->k_a_equals_k()) {
    out.profile_residual = r.profile->identity_residual;
    hard(out.profile_residual == 0, "defect identity residual nonzero");
  }
  if (r.top_level && r.top_level->applicable) {
    out.top_level_residual = r.top_level->residual;
    hard(out.top_level_residual == 0, "top level identity residual nonzero");
  }
  out.ruzsa_holds = ruzsa_bound(instance.a, instance.b).holds;
  hard(out.ruzsa_holds, "Ruzsa lower bound violated");
  out.dichotomy_holds = lemma2_bound(instance.a, instance.b).holds;
  hard(out.dichotomy_holds, "progression dichotomy bound violated");
  {
    const auto& p = instance.params;
    const Rational K(p.k);
    out.a0_identity = a0_shape(p).measure() == p.b * (K * (K - 1) / 2 + K * p.delta);
    hard(out.a0_identity, "lambda(A_0) identity violated");
  }
  const std::string base = digest(r);
  out.reflection_invariant = digest(verify_main_theorem(reflect(instance.a), reflect(instance.b), true)) == base;
  hard(out.reflection_invariant, "verdicts change under reflection");
  const Rational c = make_rational(3, 7);
  const Rational t = make_rational(-5, 3);
  out.affine_invariant =
      digest(verify_main_theorem(translate(scale(instance.a, c), t), translate(scale(instance.b, c), t), true)) == base;
  hard(out.affine_invariant, "verdicts change under a joint affine map");

  if (r.status == StructureStatus::conclusion_fail) {
    for (const auto& f : r.failures) hard(false, "theorem check failed at " + f.stage + ": " + f.detail);
  }
  if (instance.mode != PerturbationMode::adversarial && r.status != StructureStatus::pass) {
    hard(false, "instance built inside the hypothesis region did not pass (" + to_string(r.status) + ")");
  }
  return out;
}

CorpusResult run_corpus(const InstanceSpec& spec, std::size_t n, unsigned threads) {
  if (n == 0) throw Error("run_corpus needs at least one instance");
  validate(spec);
  CorpusResult result;
  result.spec = spec;
  result.outcomes.resize(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      InstanceSpec local = spec;
      local.seed = instance_seed(spec.seed, i);
      try {
        result.outcomes[i] = evaluate_instance(generate_instance(local), i, local.seed);
      } catch (const Error& e) {
        InstanceOutcome failed;
        failed.index = i;
        failed.seed = local.seed;
        failed.hard_failures.push_back(std::string("generation failed: ") + e.what());
        result.outcomes[i] = std::move(failed);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  auto tally = [](VerdictCounts& c, Verdict v) {
    if (v == Verdict::holds) ++c.holds;
    else if (v == Verdict::fails) ++c.fails;
    else ++c.indeterminate;
  };
  auto abs_max = [](Rational& acc, const Rational& v) {
    Rational m = abs(v);
    if (m > acc) acc = m;
  };
  for (const auto& o : result.outcomes) {
    ++result.status_counts[to_string(o.report.status)];
    if (o.report.hypotheses) {
      const auto& h = *o.report.hypotheses;
      tally(result.hypothesis_counts["b_below_projection"], h.b_below_projection);
      tally(result.hypothesis_counts["cube"], h.cube);
      tally(result.hypothesis_counts["log"], h.log);
      tally(result.hypothesis_counts["rho"], h.rho);
      tally(result.hypothesis_counts["main_condition"], h.main_condition);
      tally(result.hypothesis_counts["weak_condition"], h.weak_condition);
    }
    if (o.report.b_witness) ++result.b_witnesses;
    if (o.report.a_witness) ++result.a_witnesses;
    abs_max(result.max_level_residual, o.level_residual_a);
    abs_max(result.max_level_residual, o.level_residual_s);
    abs_max(result.max_profile_residual, o.profile_residual);
    abs_max(result.max_top_level_residual, o.top_level_residual);
    if (!o.hard_failures.empty()) ++result.hard_failures;
  }
  return result;
}

namespace {

Rational measured_epsilon(const IntervalSet& a, const IntervalSet& b) {
  NormalizedPair np = normalize_pair(a, b);
  const Rational lb = np.b.measure();
  const Rational la = np.a.measure();
  return (minkowski_sum(np.a, np.b).measure() - la) / lb - k_delta(la / lb).k_plus_delta();
}

}  // namespace

SweepTable tightness_sweep(const InstanceSpec& base, const std::vector<Rational>& epsilon_grid,
                           std::size_t per_point) {
  validate(base);
  if (!std::is_sorted(epsilon_grid.begin(), epsilon_grid.end())) throw Error("epsilon grid must be ascending");
  SweepTable table;
  const std::vector<std::string> families{"stretch", "shift", "collapse"};
  auto record = [&](SweepRow row, const IntervalSet& a, const IntervalSet& b) {
    row.measured_epsilon = measured_epsilon(a, b);
    row.exact = row.measured_epsilon == row.target_epsilon;
    StructureReport r = verify_main_theorem(a, b, /*explore=*/true);
    row.hypotheses = r.hypotheses;
    row.in_region = r.hypotheses && r.hypotheses->theorem_hypotheses_hold();
    row.b_witness = r.b_witness.has_value();
    row.a_witness = r.a_witness.has_value();
    row.status = r.status;
    table.rows.push_back(std::move(row));
  };
  for (std::size_t g = 0; g < epsilon_grid.size(); ++g) {
    const Rational& target = epsilon_grid[g];
    for (std::size_t sample = 0; sample < per_point; ++sample) {
      Rng rng(instance_seed(base.seed, g * 100003 + sample));
      const StructureParams p = random_params(rng, base, false);
      const EqualityStructures eq = build_equality_structures(p);
      const auto floors = eq.a0.components();
      for (const auto& family : families) {
        SweepRow row;
        row.target_epsilon = target;
        row.family = family;
        row.sample = sample;
        if (family == "collapse") {
          // K = 2, B = [0,b] ∪ {1} with b = 1/(2+δ+ε): the gap between the two
          // blocks of A+B is exactly εb. Moving the top floor left by 2εb
          // closes it, so the defect is ε while the floor sits 2εb off.
          if (target <= 0 || target > 1 || 2 * target > 1 + p.delta) continue;
          StructureParams q;
          q.k = 2;
          q.delta = p.delta;
          q.b = 1 / (2 + p.delta + target);
          q.b_plus = q.b;
          q.b_minus = 0;
          const EqualityStructures c = build_equality_structures(q);
          record(std::move(row), shift_floor(c.a0, q, c.a0.components().back(), -2 * target * q.b), c.b0);
          continue;
        }
        auto build = [&](const Rational& s) {
          if (family == "stretch") return set_union(eq.a0, IntervalSet::interval(floors.front().hi, floors.front().hi + s));
          return shift_floor(eq.a0, p, floors.back(), s);
        };
        IntervalSet a = eq.a0;
        if (target > 0) {
          // ε is linear in the perturbation size while pieces stay apart.
          const Rational probe = target * p.b;
          const Rational slope = measured_epsilon(build(probe), eq.b0) / probe;
          if (slope > 0) a = build(target / slope);
        }
        record(std::move(row), a, eq.b0);
      }
    }
  }
  for (const auto& family : families) {
    SweepFrontier f;
    f.family = family;
    for (const auto& eps : epsilon_grid) {
      bool all_in = true;
      bool any_fail = false;
      for (const auto& row : table.rows) {
        if (row.family != family || row.target_epsilon != eps) continue;
        all_in = all_in && row.in_region;
        any_fail = any_fail || !row.b_witness || !row.a_witness;
      }
      if (all_in) f.last_in_region = eps;
      if (any_fail && !f.first_conclusion_failure) f.first_conclusion_failure = eps;
    }
    table.frontier.push_back(std::move(f));
  }
  return table;
}

}  // namespace sumset
