#include "sumset/json_io.hpp"

#include <fstream>
#include <ostream>

#include "sumset/error.hpp"

namespace sumset {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
    return make_rational(j.get<long>());
  }
  if (j.is_number_float()) throw Error("floating point endpoint " + j.dump() + "; write it as a string");
  throw Error("expected a rational, got " + j.dump());
}

Json scalar_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"approx", to_display(q)}}; }

namespace {

Json optional_scalar(const std::optional<Rational>& q) { return q ? scalar_json(*q) : Json(nullptr); }

Json intervals_json(const IntervalSet& s) {
  Json list = Json::array();
  for (const auto& c : s.components()) list.push_back(Json::array({to_string(c.lo), to_string(c.hi)}));
  return list;
}

IntervalSet intervals_from(const Json& j) {
  if (!j.is_object() || !j.contains("intervals") || !j["intervals"].is_array()) {
    throw Error("expected an object with an \"intervals\" array");
  }
  std::vector<Interval> raw;
  for (const auto& pair : j["intervals"]) {
    if (!pair.is_array() || pair.size() != 2) throw Error("each interval must be a two-element array");
    raw.push_back({rational_from_json(pair[0]), rational_from_json(pair[1])});
  }
  return IntervalSet::normalize(std::move(raw));
}

Json coefficient_map(const std::map<unsigned, Rational>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = scalar_json(v);
  return out;
}

Json witness_json(const BWitness& w) {
  return Json{{"translate", scalar_json(w.translate)}, {"b_plus", scalar_json(w.b_plus)},
              {"b_minus", scalar_json(w.b_minus)}};
}

Json counts_json(const VerdictCounts& c) {
  return Json{{"holds", c.holds}, {"fails", c.fails}, {"indeterminate", c.indeterminate}};
}

std::string csv_verdict(const std::optional<HypothesisReport>& h, Verdict HypothesisReport::*field) {
  return h ? to_string((*h).*field) : "";
}

}  // namespace

Json to_json(const IntervalSet& s) { return Json{{"intervals", intervals_json(s)}}; }

IntervalSet interval_set_from_json(const Json& j) { return intervals_from(j); }

Json to_json(const TorusSet& t) { return Json{{"period", to_string(t.period())}, {"intervals", intervals_json(t.arcs())}}; }

TorusSet torus_set_from_json(const Json& j) {
  if (!j.contains("period")) throw Error("torus set needs a \"period\"");
  return TorusSet::from_arcs(rational_from_json(j["period"]), intervals_from(j));
}

Json to_json(const KDelta& kd) {
  return Json{{"k", kd.k}, {"delta", scalar_json(kd.delta)}, {"ratio", scalar_json(kd.ratio)}};
}

Json to_json(const LevelDecomposition& levels) {
  Json list = Json::array();
  for (std::size_t k = 0; k < levels.levels.size(); ++k) {
    list.push_back(Json{{"k", k + 1},
                        {"measure", scalar_json(levels.levels[k].measure())},
                        {"set", to_json(levels.levels[k])}});
  }
  return Json{{"period", scalar_json(levels.period)},
              {"k_max", levels.k_max},
              {"k_pointwise", levels.k_pointwise},
              {"total_measure", scalar_json(levels.total_measure())},
              {"levels", list}};
}

Json to_json(const RuzsaReport& r) {
  return Json{{"measure_a", scalar_json(r.measure_a)},
              {"measure_b", scalar_json(r.measure_b)},
              {"diameter_b", scalar_json(r.diameter_b)},
              {"k_delta", to_json(r.kd)},
              {"bound", scalar_json(r.bound)},
              {"sumset_measure", scalar_json(r.sumset_measure)},
              {"holds", r.holds},
              {"tight", r.tight}};
}

Json to_json(const RefinedBoundReport& r) {
  return Json{{"applicable", r.applicable},
              {"k_a", r.k_a},
              {"k_delta", to_json(r.kd)},
              {"sumset_measure", scalar_json(r.sumset_measure)},
              {"rhs", scalar_json(r.rhs)},
              {"holds", r.holds},
              {"k_a_equals_k", r.k_a_equals_k}};
}

Json to_json(const DichotomyReport& r) {
  return Json{{"k", r.k},
              {"diameter_bound", scalar_json(r.diameter_bound)},
              {"progression_bound", scalar_json(r.progression_bound)},
              {"bound", scalar_json(r.bound)},
              {"branch", to_string(r.branch)},
              {"sumset_measure", scalar_json(r.sumset_measure)},
              {"holds", r.holds},
              {"tight", r.tight}};
}

Json to_json(const EpsilonProfile& p) {
  return Json{{"b", scalar_json(p.b)},
              {"k_delta", to_json(p.kd)},
              {"epsilon", scalar_json(p.epsilon)},
              {"eps1", coefficient_map(p.eps1)},
              {"eps2", coefficient_map(p.eps2)},
              {"eps3", coefficient_map(p.eps3)},
              {"k_a", p.k_a},
              {"k_s", p.k_s},
              {"swapped", p.swapped},
              {"identity_residual", scalar_json(p.identity_residual)},
              {"nonnegative", p.nonnegative},
              {"bounds_hold", p.bounds_hold}};
}

Json to_json(const TopLevelReport& r) {
  return Json{{"applicable", r.applicable},
              {"top_level_measure", scalar_json(r.top_level_measure)},
              {"predicted_measure", scalar_json(r.predicted_measure)},
              {"residual", scalar_json(r.residual)},
              {"hull_length", scalar_json(r.hull_length)},
              {"lower_bound", to_string(r.lower_bound)},
              {"harmonic_lower_bound", r.harmonic_lower_bound},
              {"refined_upper_bound", r.refined_upper_bound},
              {"upper_bound", r.upper_bound}};
}

Json to_json(const HypothesisReport& h) {
  return Json{{"b", scalar_json(h.b)},
              {"measure_a", scalar_json(h.measure_a)},
              {"k_delta", to_json(h.kd)},
              {"epsilon", scalar_json(h.epsilon)},
              {"top_mod_measure", scalar_json(h.top_mod_measure)},
              {"verdicts",
               Json{{"b_below_projection", to_string(h.b_below_projection)},
                    {"cube", to_string(h.cube)},
                    {"log", to_string(h.log)},
                    {"rho", to_string(h.rho)},
                    {"main_condition", to_string(h.main_condition)},
                    {"weak_condition", to_string(h.weak_condition)}}},
              {"theorem_hypotheses_hold", h.theorem_hypotheses_hold()}};
}

Json to_json(const StructureParams& p) {
  return Json{{"k", p.k},
              {"delta", scalar_json(p.delta)},
              {"b", scalar_json(p.b)},
              {"b_plus", scalar_json(p.b_plus)},
              {"b_minus", scalar_json(p.b_minus)},
              {"diameter", scalar_json(p.diam)}};
}

Json to_json(const StructureReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"stage", f.stage}, {"detail", f.detail}});
  Json normalization{{"b_scale", scalar_json(r.normalized.b_map.scale)},
                     {"b_offset", scalar_json(r.normalized.b_map.offset)},
                     {"a_shift", scalar_json(r.normalized.a_shift)}};
  return Json{{"status", to_string(r.status)},
              {"explore", r.explore},
              {"normalization", normalization},
              {"params", to_json(r.params)},
              {"epsilon", scalar_json(r.epsilon)},
              {"hypotheses", r.hypotheses ? to_json(*r.hypotheses) : Json(nullptr)},
              {"profile", r.profile ? to_json(*r.profile) : Json(nullptr)},
              {"top_level", r.top_level ? to_json(*r.top_level) : Json(nullptr)},
              {"crude_bound", r.crude_bound},
              {"b_witness", r.b_witness ? witness_json(*r.b_witness) : Json(nullptr)},
              {"a_witness", optional_scalar(r.a_witness)},
              {"b_witness_original", optional_scalar(r.b_witness_original)},
              {"a_witness_original", optional_scalar(r.a_witness_original)},
              {"a0_measure_matches", r.a0_measure_matches},
              {"failures", failures}};
}

Json to_json(const InstanceSpec& spec) {
  return Json{{"seed", spec.seed},
              {"k_range", Json::array({spec.k_min, spec.k_max})},
              {"denominator_bound", spec.denominator_bound},
              {"perturbation",
               Json{{"hole_budget", to_string(spec.perturbation.hole_budget)},
                    {"shift_budget", to_string(spec.perturbation.shift_budget)},
                    {"mode", to_string(spec.perturbation.mode)}}}};
}

InstanceSpec instance_spec_from_json(const Json& j) {
  InstanceSpec spec;
  if (!j.is_object()) throw Error("instance spec must be a JSON object");
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("k_range")) {
    const auto& r = j["k_range"];
    if (!r.is_array() || r.size() != 2) throw Error("k_range must be [k_min, k_max]");
    spec.k_min = r[0].get<unsigned>();
    spec.k_max = r[1].get<unsigned>();
  }
  if (j.contains("denominator_bound")) spec.denominator_bound = j["denominator_bound"].get<unsigned long>();
  if (j.contains("perturbation")) {
    const auto& p = j["perturbation"];
    if (p.contains("hole_budget")) spec.perturbation.hole_budget = rational_from_json(p["hole_budget"]);
    if (p.contains("shift_budget")) spec.perturbation.shift_budget = rational_from_json(p["shift_budget"]);
    if (p.contains("mode")) spec.perturbation.mode = parse_mode(p["mode"].get<std::string>());
  }
  validate(spec);
  return spec;
}

Json to_json(const InstanceOutcome& o, bool include_sets) {
  const auto& r = o.report;
  Json out{{"index", o.index},
           {"seed", o.seed},
           {"mode", to_string(o.instance.mode)},
           {"base_params", to_json(o.instance.params)},
           {"perturbations", o.instance.perturbations},
           {"status", to_string(r.status)},
           {"epsilon", scalar_json(r.epsilon)},
           {"k", r.params.k},
           {"delta", scalar_json(r.params.delta)},
           {"hypotheses", r.hypotheses ? to_json(*r.hypotheses)["verdicts"] : Json(nullptr)},
           {"b_witness", r.b_witness ? witness_json(*r.b_witness) : Json(nullptr)},
           {"a_witness", optional_scalar(r.a_witness)},
           {"top_level_lower_bound", r.top_level ? to_string(r.top_level->lower_bound) : std::string("n/a")},
           {"residuals",
            Json{{"level_a", to_string(o.level_residual_a)},
                 {"level_s", to_string(o.level_residual_s)},
                 {"profile", to_string(o.profile_residual)},
                 {"top_level", to_string(o.top_level_residual)}}},
           {"ruzsa_holds", o.ruzsa_holds},
           {"dichotomy_holds", o.dichotomy_holds},
           {"a0_identity", o.a0_identity},
           {"reflection_invariant", o.reflection_invariant},
           {"affine_invariant", o.affine_invariant},
           {"hard_failures", o.hard_failures}};
  if (include_sets) {
    out["a"] = to_json(o.instance.a);
    out["b"] = to_json(o.instance.b);
  }
  return out;
}

Json to_json(const CorpusResult& c, bool include_sets) {
  Json instances = Json::array();
  for (const auto& o : c.outcomes) instances.push_back(to_json(o, include_sets));
  Json hyp = Json::object();
  for (const auto& [name, counts] : c.hypothesis_counts) hyp[name] = counts_json(counts);
  return Json{{"spec", to_json(c.spec)},
              {"count", c.outcomes.size()},
              {"status_counts", c.status_counts},
              {"hypothesis_counts", hyp},
              {"b_witnesses", c.b_witnesses},
              {"a_witnesses", c.a_witnesses},
              {"max_residuals",
               Json{{"level", to_string(c.max_level_residual)},
                    {"profile", to_string(c.max_profile_residual)},
                    {"top_level", to_string(c.max_top_level_residual)}}},
              {"hard_failures", c.hard_failures},
              {"ok", c.ok()},
              {"instances", instances}};
}

Json to_json(const SweepTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    rows.push_back(Json{{"target_epsilon", scalar_json(row.target_epsilon)},
                        {"family", row.family},
                        {"sample", row.sample},
                        {"measured_epsilon", scalar_json(row.measured_epsilon)},
                        {"exact", row.exact},
                        {"hypotheses", row.hypotheses ? to_json(*row.hypotheses)["verdicts"] : Json(nullptr)},
                        {"in_region", row.in_region},
                        {"b_witness", row.b_witness},
                        {"a_witness", row.a_witness},
                        {"status", to_string(row.status)}});
  }
  Json frontier = Json::array();
  for (const auto& f : t.frontier) {
    frontier.push_back(Json{{"family", f.family},
                            {"last_in_region", optional_scalar(f.last_in_region)},
                            {"first_conclusion_failure", optional_scalar(f.first_conclusion_failure)}});
  }
  return Json{{"rows", rows}, {"frontier", frontier}};
}

void write_corpus_csv(std::ostream& os, const CorpusResult& c) {
  os << "index,seed,mode,k,delta,epsilon,status,b_below_projection,cube,log,rho,main_condition,weak_condition,"
        "b_witness,a_witness,hard_failures\n";
  for (const auto& o : c.outcomes) {
    const auto& r = o.report;
    const auto& h = r.hypotheses;
    os << o.index << ',' << o.seed << ',' << to_string(o.instance.mode) << ',' << r.params.k << ','
       << to_display(r.params.delta) << ',' << to_display(r.epsilon) << ',' << to_string(r.status) << ','
       << csv_verdict(h, &HypothesisReport::b_below_projection) << ',' << csv_verdict(h, &HypothesisReport::cube)
       << ',' << csv_verdict(h, &HypothesisReport::log) << ',' << csv_verdict(h, &HypothesisReport::rho) << ','
       << csv_verdict(h, &HypothesisReport::main_condition) << ','
       << csv_verdict(h, &HypothesisReport::weak_condition) << ',' << (r.b_witness ? 1 : 0) << ','
       << (r.a_witness ? 1 : 0) << ',' << o.hard_failures.size() << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepTable& t) {
  os << "family,sample,target_epsilon,measured_epsilon,exact,in_region,cube,log,rho,main_condition,b_witness,"
        "a_witness,status\n";
  for (const auto& row : t.rows) {
    const auto& h = row.hypotheses;
    os << row.family << ',' << row.sample << ',' << to_display(row.target_epsilon) << ','
       << to_display(row.measured_epsilon) << ',' << (row.exact ? 1 : 0) << ',' << (row.in_region ? 1 : 0) << ','
       << csv_verdict(h, &HypothesisReport::cube) << ',' << csv_verdict(h, &HypothesisReport::log) << ','
       << csv_verdict(h, &HypothesisReport::rho) << ',' << csv_verdict(h, &HypothesisReport::main_condition) << ','
       << (row.b_witness ? 1 : 0) << ',' << (row.a_witness ? 1 : 0) << ',' << to_string(row.status) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sumset
