#pragma once

#include "m0a/family.hpp"
#include "m0a/rational.hpp"
#include "m0a/weights.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace m0a {

// Weights of G = a_sigma F_sigma + a_tau F_tau + a_sigma_tau F_sigma_tau - a_delta F_Delta.
struct CoefficientVector {
  Rational a_sigma;
  Rational a_tau;
  Rational a_sigma_tau;
  Rational a_delta = 1;

  // a_sigma = a, a_sigma_tau = b, a_tau = (m - b)/m (0 for m = 0), a_delta = 1.
  static CoefficientVector from_ab(int m, const Rational& a, const Rational& b);

  CoefficientVector scaled(const Rational& lambda) const;

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

struct DropEvaluation {
  int r1 = 0;
  int r2 = 0;
  Rational value;

  friend bool operator==(const DropEvaluation&, const DropEvaluation&) = default;
};

// Lattice points 0 <= r1 <= n, 0 <= r2 <= m with r1/k + r2 > 1 and
// (n - r1)/k + (m - r2) > 1, in lexicographic order.
std::vector<std::pair<int, int>> admissible_pairs(const WeightVector& w);

// H(r1, r2): the drop of G across one blow-down with these counts.
Rational drop_value(const WeightVector& w, const CoefficientVector& coeffs, int r1, int r2);

// Exact minimum over admissible_pairs, ties to the lexicographically smallest
// pair; nullopt when no step is possible. min_drop splits the lattice across
// OpenMP threads, min_drop_serial is the reference loop.
std::optional<DropEvaluation> min_drop(const WeightVector& w, const CoefficientVector& coeffs);
std::optional<DropEvaluation> min_drop_serial(const WeightVector& w, const CoefficientVector& coeffs);

// G(0), ..., G(N).
std::vector<Rational> g_series(const FamilyModel& family, const CoefficientVector& coeffs);

struct PositivityCase {
  int id = 0;
  bool satisfied = false;
};

// Throws kNoCaseApplies for m = 1, n = k + 1 and for m >= 2, n <= 1.
PositivityCase positivity_case(const WeightVector& w, const Rational& a, const Rational& b);

// The (a, b) with (a + b/n) psi_sigma + (2a/(n-1)) Delta_s = c psi_sigma + (2c-1) Delta_s.
std::pair<Rational, Rational> ab_substitution(int n, const Rational& c);

struct Threshold {
  // 1..5 as in the case list; 6 for m >= 2 with at most one light section.
  int case_id = 0;
  Rational lower;
  Rational upper;
  bool lower_open = false;
  bool upper_open = false;
  bool equality = false;
  // Present for the single-value cases.
  std::optional<Rational> a;
  std::optional<Rational> b;

  bool is_point() const { return !lower_open && !upper_open && lower == upper; }
  bool contains(const Rational& c) const;
  std::string describe() const;
};

// Requires k >= 2 (kInvalidArgument otherwise).
Threshold threshold_c(const WeightVector& w);

struct C0 {
  Rational c0;
  bool strict = false;  // c0 < (k+2)/(2(k+1))
};

// The value from threshold_c, or the midpoint of its interval.
C0 c0_lower(const WeightVector& w);

struct AmpleInterval {
  Rational lo;                   // open
  std::optional<Rational> hi;    // closed; none for k = 1
};

AmpleInterval ample_interval(int k);

enum class Verdict { kStrictlyPositive, kNonnegativeZeroCharacterized, kInconclusive };

std::string verdict_name(Verdict verdict);

enum class TraceKind { kMinDrop, kPullback, kRecurse, kAxiom };

std::string trace_kind_name(TraceKind kind);

struct TraceEntry {
  TraceKind kind;
  WeightVector weights;
  Rational c;
  std::string note;
};

struct Certificate {
  explicit Certificate(WeightVector w, Rational c_value)
      : weights(w), c(std::move(c_value)), witness_weights(w) {}

  Verdict verdict = Verdict::kInconclusive;
  WeightVector weights;
  Rational c;
  std::optional<Rational> a;
  std::optional<Rational> b;
  std::optional<Rational> lambda0;
  CoefficientVector coeffs;
  // The witness drop is recomputable as drop_value(witness_weights, coeffs, r1, r2).
  WeightVector witness_weights;
  std::optional<DropEvaluation> witness;
  // None means no step is possible on the witness space, so no perturbation
  // of the boundary can change any degree.
  std::optional<Rational> margin;
  std::vector<WeightVector> strata_checked;
  std::vector<WeightVector> zero_strata;
  std::vector<TraceEntry> trace;
  std::string note;

  bool invokes_min_drop_on(const WeightVector& w) const;
};

// One (a, b) substitution of D_k(c) and the exhaustive minimum drop.
Certificate certify_generic(const WeightVector& w, const Rational& c);

// Positivity of D_k(c) on every curve, by stratum recursion. Accepts
// (k+2)/(2k+2) <= c <= (k+1)/(2k) for k >= 2 (the lower endpoint gives the
// zero-curve classification) and c > 2/3 for k = 1. Throws kCOutOfInterval.
Certificate certify_interval(const WeightVector& w, const Rational& c);

// Reruns the certification with each top-space drop at counts (r1, r2)
// shifted by eps[canonical (r1, r2)]. Requires c inside ample_interval(k).
Certificate perturbed_certify(const WeightVector& w, const Rational& c,
                              const std::map<BoundaryKey, Rational>& eps);

// All factor weight vectors reachable by splitting at nodes, w included, sorted.
std::vector<WeightVector> reachable_strata(const WeightVector& w);

std::string format_certificate(const Certificate& cert);
std::string format_certificate_json(const Certificate& cert);

struct ThresholdRow {
  int n = 0;
  int m = 0;
  Threshold threshold;
  C0 c0;
  Verdict generic_verdict = Verdict::kInconclusive;
  std::optional<DropEvaluation> generic_min;
};

// Every valid (n, m) with n <= nmax, m <= mmax: threshold data and the generic
// certificate at c0. threshold_table fans the rows out over OpenMP threads.
std::vector<ThresholdRow> threshold_table(int k, int nmax, int mmax);
std::vector<ThresholdRow> threshold_table_serial(int k, int nmax, int mmax);

}  // namespace m0a
