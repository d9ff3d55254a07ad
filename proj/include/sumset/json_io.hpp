#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "sumset/harness.hpp"
#include "sumset/ruzsa.hpp"
#include "sumset/structure.hpp"
#include "sumset/torus.hpp"

namespace sumset {

using Json = nlohmann::json;

// Endpoints are strings ("p/q", integers, decimals) or JSON integers;
// floating point numbers are rejected.
Rational rational_from_json(const Json& j);
// {"exact": "p/q", "approx": "<decimal>"}
Json scalar_json(const Rational& q);

// {"intervals": [["p/q","r/s"], ...]}
Json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const Json& j);
// {"period": "p/q", "intervals": [...]}
Json to_json(const TorusSet& t);
TorusSet torus_set_from_json(const Json& j);

Json to_json(const KDelta& kd);
Json to_json(const LevelDecomposition& levels);
Json to_json(const RuzsaReport& r);
Json to_json(const RefinedBoundReport& r);
Json to_json(const DichotomyReport& r);
Json to_json(const EpsilonProfile& p);
Json to_json(const TopLevelReport& r);
Json to_json(const HypothesisReport& h);
Json to_json(const StructureParams& p);
Json to_json(const StructureReport& r);
Json to_json(const InstanceSpec& spec);
// Per-instance digest; the sets themselves are included only on request
// since perturbed endpoints carry ~1500-digit denominators.
Json to_json(const InstanceOutcome& o, bool include_sets = false);
Json to_json(const CorpusResult& c, bool include_sets = false);
Json to_json(const SweepTable& t);

InstanceSpec instance_spec_from_json(const Json& j);

void write_corpus_csv(std::ostream& os, const CorpusResult& c);
void write_sweep_csv(std::ostream& os, const SweepTable& t);

Json read_json_file(const std::string& path);
// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

}  // namespace sumset
