#pragma once

#include <map>

#include "sumset/enclosure.hpp"
#include "sumset/interval_set.hpp"
#include "sumset/torus.hpp"

namespace sumset {

// The unique K >= 1, 0 <= delta < 1 with ratio = K(K-1)/2 + K·delta.
struct KDelta {
  unsigned long k = 1;
  Rational delta;
  Rational ratio;

  // K + delta.
  Rational k_plus_delta() const { return Rational(k) + delta; }
};

// Throws unless ratio > 0.
KDelta k_delta(const Rational& ratio);

struct RuzsaReport {
  Rational measure_a;
  Rational measure_b;
  Rational diameter_b;
  KDelta kd;
  Rational bound;
  Rational sumset_measure;
  bool holds = false;
  bool tight = false;
};

// λ(A+B) >= λ(A) + min(D_B, (K+δ)λ(B)). Requires λ(B) > 0.
RuzsaReport ruzsa_bound(const IntervalSet& a, const IntervalSet& b);

struct RefinedBoundReport {
  // False when λ(A+B) >= λ(A) + D_B; the inequality is then not asserted.
  bool applicable = false;
  unsigned k_a = 0;
  KDelta kd;
  Rational sumset_measure;
  Rational rhs;
  bool holds = true;
  bool k_a_equals_k = false;
};

// λ(A+B) >= ((K_A+1)/K_A)λ(A) + ((K_A+1)/2)λ(B) under λ(A+B) < λ(A)+D_B,
// with K_A read off the level sets of A modulo D_B. Requires min B = 0.
RefinedBoundReport refined_bound_check(const IntervalSet& a, const IntervalSet& b);

enum class DichotomyBranch { diameter, progression, degenerate };
std::string to_string(DichotomyBranch b);

struct DichotomyReport {
  unsigned k = 0;
  Rational diameter_bound;
  Rational progression_bound;
  Rational bound;
  DichotomyBranch branch = DichotomyBranch::degenerate;
  Rational sumset_measure;
  bool holds = false;
  bool tight = false;
};

// λ(E+F) >= min(λ(E) + diam F, ((k+1)/k)λ(E) + ((k+1)/2)λ(F)) where k is the
// longest progression of step diam F inside E. A single-point F falls back
// to λ(E+F) >= λ(E).
DichotomyReport lemma2_bound(const IntervalSet& e, const IntervalSet& f);

// Defect coefficients of a normalized pair (min B = 0, D_B = 1,
// min A ∈ [0,1)), all in units of b = λ(B):
//   μ(S̃_k) = μ(Ã_{k-1}) + eps1[k] b         2 <= k <= K+1
//   μ(S̃_k) = μ(Ã_k) + b + eps2[k] b         1 <= k <= K
//   μ(S̃_k) = eps3[k] b                      k >= K+2
struct EpsilonProfile {
  Rational b;
  KDelta kd;
  Rational epsilon;
  std::map<unsigned, Rational> eps1;
  std::map<unsigned, Rational> eps2;
  std::map<unsigned, Rational> eps3;
  unsigned k_a = 0;
  unsigned k_s = 0;
  // A and B were exchanged (and renormalized) because λ(A) < λ(B).
  bool swapped = false;
  LevelDecomposition levels_a;
  LevelDecomposition levels_s;

  // ε minus the weighted sum of the coefficients; zero whenever K_A <= K.
  Rational identity_residual;
  bool nonnegative = false;
  // Σ eps3 <= ε, eps1[k] <= Kε/(k-1), eps2[k] <= Kε/(K+1-k).
  bool bounds_hold = false;

  bool k_a_equals_k() const { return k_a == kd.k; }
};

EpsilonProfile epsilon_profile(const IntervalSet& a, const IntervalSet& b);

// Every coefficient is at most Kε and Kε <= rho0 / b.
bool crude_bound_holds(const EpsilonProfile& profile, const Rational& rho0);

struct TopLevelReport {
  bool applicable = false;
  Rational top_level_measure;
  Rational predicted_measure;
  Rational residual;
  Rational hull_length;
  // δb - K(log K - 1)εb <= μ(I_K), decided with outward-rounded logs.
  Verdict lower_bound = Verdict::indeterminate;
  // μ(I_K) <= δb + (1/K)Σ k(eps1[k+1] - eps2[k+1])b + eps2[K]b.
  bool refined_upper_bound = false;
  // μ(I_K) <= δb + 2εb.
  bool upper_bound = false;
  // δb - (K·H_{K-1} - (K-1))εb <= μ(I_K), the harmonic-sum form.
  bool harmonic_lower_bound = false;
};

// Top level identity μ(Ã_K) = δb + (1/K)Σ_{k<K} k(eps1[k+1] - eps2[k+1])b and
// the two-sided bound on the hull I_K of Ã_K. Not applicable unless K_A = K >= 2.
TopLevelReport ak_identity_check(const EpsilonProfile& profile, const LevelDecomposition& levels_a,
                                 const Arc& hull_top_level);
// Convenience overload using the profile's own level sets.
TopLevelReport ak_identity_check(const EpsilonProfile& profile);

}  // namespace sumset
