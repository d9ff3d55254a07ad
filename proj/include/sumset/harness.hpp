#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumset/structure.hpp"

namespace sumset {

enum class PerturbationMode { equality, perturbed, adversarial };
std::string to_string(PerturbationMode m);
PerturbationMode parse_mode(const std::string& text);

struct Perturbation {
  // Upper bound on each hole or stretch length.
  Rational hole_budget = pow10(-1552);
  // Upper bound on each component shift.
  Rational shift_budget = pow10(-1552);
  PerturbationMode mode = PerturbationMode::perturbed;
};

struct InstanceSpec {
  std::uint64_t seed = 1;
  unsigned k_min = 2;
  unsigned k_max = 5;
  // Structure parameters δ, b_+, b_- are drawn from the grid (1/N)·Z.
  unsigned long denominator_bound = 1000;
  Perturbation perturbation;
};

// Throws on an unusable spec (empty K range, hole budget not below δb, ...).
void validate(const InstanceSpec& spec);

struct Instance {
  IntervalSet a;
  IntervalSet b;
  StructureParams params;  // the equality structure the instance started from
  std::vector<std::string> perturbations;
  PerturbationMode mode = PerturbationMode::equality;
};

// Deterministic in spec.seed.
Instance generate_instance(const InstanceSpec& spec);

// Seed used for instance `index` of a corpus.
std::uint64_t instance_seed(std::uint64_t corpus_seed, std::size_t index);

struct InstanceOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Instance instance;
  StructureReport report;
  Rational level_residual_a;   // Σ μ(Ã_k) - λ(A)
  Rational level_residual_s;   // Σ μ(S̃_k) - λ(S)
  Rational profile_residual;   // weighted defect identity, when K_A = K
  Rational top_level_residual; // top level identity, when K_A = K
  bool ruzsa_holds = false;
  bool dichotomy_holds = false;
  bool a0_identity = false;
  bool reflection_invariant = false;
  bool affine_invariant = false;
  std::vector<std::string> hard_failures;
};

InstanceOutcome evaluate_instance(const Instance& instance, std::size_t index = 0, std::uint64_t seed = 0);

struct VerdictCounts {
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t indeterminate = 0;
};

struct CorpusResult {
  InstanceSpec spec;
  std::vector<InstanceOutcome> outcomes;
  std::map<std::string, VerdictCounts> hypothesis_counts;
  std::map<std::string, std::size_t> status_counts;
  std::size_t b_witnesses = 0;
  std::size_t a_witnesses = 0;
  Rational max_level_residual;
  Rational max_profile_residual;
  Rational max_top_level_residual;
  std::size_t hard_failures = 0;

  bool ok() const { return hard_failures == 0; }
};

// Evaluates n instances on `threads` workers (0 = hardware concurrency).
// Results are merged by instance index.
CorpusResult run_corpus(const InstanceSpec& spec, std::size_t n, unsigned threads = 0);

struct SweepRow {
  Rational target_epsilon;
  std::string family;
  std::size_t sample = 0;
  Rational measured_epsilon;
  bool exact = false;
  std::optional<HypothesisReport> hypotheses;
  bool in_region = false;
  bool b_witness = false;
  bool a_witness = false;
  StructureStatus status = StructureStatus::error;
};

struct SweepFrontier {
  std::string family;
  // Largest grid value whose instances all satisfy the hypotheses.
  std::optional<Rational> last_in_region;
  // Smallest grid value at which some conclusion failed.
  std::optional<Rational> first_conclusion_failure;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<SweepFrontier> frontier;
};

// For each ε on the (ascending) grid builds instances whose defect is exactly
// ε: a stretched floor (stays inside the conclusion) and a displaced top
// floor (leaves it once ε is large).
SweepTable tightness_sweep(const InstanceSpec& base, const std::vector<Rational>& epsilon_grid,
                           std::size_t per_point = 1);

}  // namespace sumset
