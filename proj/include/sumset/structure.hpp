#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sumset/enclosure.hpp"
#include "sumset/interval_set.hpp"
#include "sumset/normalize.hpp"
#include "sumset/ruzsa.hpp"

namespace sumset {

// 3.1 × 10^-1549, the admissible defect scale inherited from the torus
// stability theorem.
const Rational& rho0();

struct StructureParams {
  unsigned long k = 1;
  Rational delta;
  Rational b;
  Rational b_plus;
  Rational b_minus;
  Rational diam = 1;
};

// Throws unless b_+, b_- >= 0, b_+ + b_- = b, 0 <= δ < 1, b > 0 and
// (K+δ)b < D.
void validate_equality_params(const StructureParams& p);

struct EqualityStructures {
  IntervalSet a0;
  IntervalSet b0;
};

// B_0 = [0,b_+] ∪ [D-b_-, D] and
// A_0 = ⋃_{k=1..K} [(k-1)(D-b_-), (k-1)D + (K-k)b_+ + δb].
// Checks λ(A_0) = b(K(K-1)/2 + Kδ) and λ(A_0+B_0) = λ(A_0) + (K+δ)b.
EqualityStructures build_equality_structures(const StructureParams& p);

// A_0 from the same formula without the equality-case checks; used as the
// target shape when b_+ + b_- exceeds b.
IntervalSet a0_shape(const StructureParams& p);

// A_0 ∪ ((i-1)D + (K-i)b + δb + [0, ε'b]) ∪ ((i-1)D + [-(ε-ε')b, 0]) for
// B = [0,b] ∪ {D}; requires b_+ = b, b_- = 0, 0 <= ε' <= ε, 1 <= i <= K.
IntervalSet build_extremal_family(const StructureParams& p, const Rational& epsilon, const Rational& eps_prime,
                                  unsigned long i);

struct HypothesisReport {
  Rational b;
  Rational measure_a;
  KDelta kd;
  Rational epsilon;
  Rational top_mod_measure;  // μ(Ã_1), the measure of A mod D_B
  Verdict b_below_projection = Verdict::indeterminate;  // λ(B) <= μ(Ã_1)
  Verdict cube = Verdict::indeterminate;                // ε < (δ/3K)^3
  Verdict log = Verdict::indeterminate;                 // ε < (1-δ)/(K^3 log K)
  Verdict rho = Verdict::indeterminate;                 // ε < ρ0/(Kλ(B))
  Verdict main_condition = Verdict::indeterminate;      // (K+δ+(K²log K+12)ε)λ(B) < D_B
  Verdict weak_condition = Verdict::indeterminate;      // the weaker form used in the proof

  bool all_hold() const;
  // Hypotheses of the structure theorem: everything except the weak
  // condition, which the main condition implies.
  bool theorem_hypotheses_hold() const;
};

// Needs a normalized pair. Throws if ε < 0, which cannot happen when
// (K+δ)λ(B) < D_B.
HypothesisReport hypothesis_check(const IntervalSet& a, const IntervalSet& b);

struct BWitness {
  Rational translate;
  Rational b_plus;
  Rational b_minus;
};

struct BConclusion {
  std::optional<BWitness> witness;
  // Best split found (always filled); its b_+ + b_- exceeds `limit` when
  // no witness exists.
  BWitness best;
  Rational limit;
};

// B ⊆ t + ([0,b_+] ∪ [D_B-b_-, D_B]) with b_+ + b_- <= λ(B)(1+ε). The
// largest gap of B decides; the search is exhaustive.
BConclusion conclusion_check_B(const IntervalSet& b, const Rational& epsilon);

struct AConclusion {
  std::optional<Rational> translate;
  IntervalSet target;    // A_0 + [0, εb]
  IntervalSet feasible;  // {t : A ⊆ t + target}
};

// A ⊆ a' + A_0 + [0, εb]; returns the smallest feasible a'.
AConclusion conclusion_check_A(const IntervalSet& a, const StructureParams& p, const Rational& epsilon);

struct FailureCertificate {
  std::string stage;
  std::string detail;
};

enum class StructureStatus { pass, hypotheses_fail, conclusion_fail, error };
std::string to_string(StructureStatus s);

struct StructureReport {
  NormalizedPair normalized;
  StructureParams params;
  Rational epsilon;
  bool explore = true;
  std::optional<HypothesisReport> hypotheses;
  std::optional<EpsilonProfile> profile;
  std::optional<TopLevelReport> top_level;
  bool crude_bound = false;
  std::optional<BWitness> b_witness;
  std::optional<Rational> a_witness;
  // Witness translates expressed in the caller's coordinates.
  std::optional<Rational> b_witness_original;
  std::optional<Rational> a_witness_original;
  bool a0_measure_matches = true;
  StructureStatus status = StructureStatus::error;
  std::vector<FailureCertificate> failures;

  bool passed() const { return status == StructureStatus::pass; }
};

// normalize_pair → k_delta → epsilon_profile → hypothesis_check →
// conclusion_check_B → conclusion_check_A. With `explore` set, conclusions
// are attempted even when hypotheses fail.
StructureReport verify_main_theorem(const IntervalSet& a, const IntervalSet& b, bool explore = true);

}  // namespace sumset
