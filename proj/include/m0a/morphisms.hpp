#pragma once

#include "m0a/divisor_class.hpp"
#include "m0a/family.hpp"
#include "m0a/rational.hpp"
#include "m0a/weights.hpp"

#include <optional>
#include <string>

namespace m0a {

enum class MorphismKind { kReductionFromUnweighted, kReductionStep, kReplacement };

std::string morphism_kind_name(MorphismKind kind);

struct MorphismSpec {
  MorphismKind kind;
  WeightVector source;
  WeightVector target;
};

// Builds the morphism landing on `target`. Throws kInvalidMorphism when the
// source would not exist (k < 2 for the reductions, n < k for replacement).
MorphismSpec make_morphism(MorphismKind kind, const WeightVector& target);

// The exceptional locus F of (n,m,k-1) -> (n,m,k) as a source boundary key;
// empty when n < k, where the reduction is an isomorphism.
std::optional<BoundaryKey> exceptional_key(const MorphismSpec& spec);

// psi -> psi_sigma + psi_tau + 2 Delta_s, Delta -> Delta + Delta_s.
// `cls` lives on (n+m, 0, 1) and may only carry psi and Delta.
DivisorClass pushforward_reduction(const DivisorClass& cls, const WeightVector& target);

// Pull-back from (n,m,k) to (n,m,k-1):
//   psi_sigma -> psi_sigma - kF, psi_tau -> psi_tau,
//   Delta_s -> Delta_s + C(k,2) F, Delta -> Delta - F.
// The F entry is written even when its coefficient vanishes.
DivisorClass pullback_reduction(const DivisorClass& cls);

// Pull-back from (n,m,k) to (n-k, m+1, k), the new heavy section tau_{m+1}
// standing in for k coincident light ones.
DivisorClass pullback_replacement(const DivisorClass& cls);

struct SurfaceNumbers {
  Rational psi_B;
  Rational delta_s_B;
  Rational delta_B;
};

// Recomputation of the push-forward constants from the diagonal test curve.
struct PushforwardDerivation {
  int n = 0;
  SurfaceNumbers diagonal;   // on (n, 0, 2): product surface, sigma_n the diagonal
  SurfaceNumbers blown_up;   // on (n, 0, 1): the n-1 crossings blown up
  Rational a;                // phi_* psi = psi + a Delta_s
  Rational b;                // phi_* Delta = Delta + b Delta_s
  // As printed in the source text, kept for the fixture report.
  std::string listed_diagonal_psi = "2";
  std::string listed_blown_up_psi = "4+2n / 4-2n";
};

// Requires n >= 5.
PushforwardDerivation derive_pushforward_constants(int n);

// The contracted test curve for (n,m,k-1) -> (n,m,k): k lines through the
// blown-up plane glued along E to a trivial family with the other sections.
struct PullbackDerivation {
  int k = 0;
  Rational psi_sigma_B;
  Rational psi_tau_B;
  Rational delta_s_B;
  Rational delta_B;
  Rational f_B;
  // Rule constants from 0 = X.B + x F.B.
  Rational psi_sigma_constant;
  Rational psi_tau_constant;
  Rational delta_s_constant;
  Rational delta_constant;
};

// The blown-up plane component as a family on (k, 1, k-1), tau = E.
FamilyModel pullback_test_stratum(int k);

// Requires (n, m, k-1) valid, k >= 2 and n >= k.
PullbackDerivation derive_pullback_constant(int n, int m, int k);

}  // namespace m0a
