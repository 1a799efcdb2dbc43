#pragma once

#include "m0a/divisor_class.hpp"
#include "m0a/rational.hpp"
#include "m0a/weights.hpp"

#include <map>
#include <string>
#include <vector>

namespace m0a {

// One elementary blow-down C_i -> C_{i+1}. The exceptional curve meets r1
// light and r2 heavy sections. Concrete steps also name the sections
// (1-based indices); abstract steps only carry the counts.
struct BlowdownStep {
  int r1 = 0;
  int r2 = 0;
  std::vector<int> sigma;
  std::vector<int> tau;

  static BlowdownStep counts(int r1, int r2);
  static BlowdownStep sections(std::vector<int> sigma, std::vector<int> tau);
};

enum class FamilyMode { kConcrete, kAbstract };

// A complete one-parameter family with smooth generic fiber, presented by its
// blow-down sequence C_0 -> ... -> C_N. steps[i] describes C_i -> C_{i+1};
// the terminal P^1-bundle C_N is described by the self-intersections of the
// section images (concrete mode only).
struct FamilyModel {
  WeightVector weights;
  FamilyMode mode = FamilyMode::kAbstract;
  std::vector<BlowdownStep> steps;
  std::vector<long long> final_e_sigma;
  std::vector<long long> final_e_tau;

  int length() const { return static_cast<int>(steps.size()); }
  bool concrete() const { return mode == FamilyMode::kConcrete; }
};

FamilyModel abstract_family(const WeightVector& w, const std::vector<std::pair<int, int>>& counts);

struct Violation {
  std::string path;
  std::string message;
};

std::vector<Violation> validate_family(const FamilyModel& family);

// Throws Error(kInvalidFamily) carrying the first violation.
void require_valid(const FamilyModel& family);

// Dense symmetric integer matrix; sections ordered sigma_1..sigma_n, tau_1..tau_m.
class IntersectionMatrix {
 public:
  explicit IntersectionMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size * size)) {}

  int size() const { return size_; }
  long long operator()(int r, int c) const { return data_[index(r, c)]; }
  long long& operator()(int r, int c) { return data_[index(r, c)]; }

  friend bool operator==(const IntersectionMatrix&, const IntersectionMatrix&) = default;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * size_ + c); }
  int size_;
  std::vector<long long> data_;
};

// Section intersection matrix on C_level. Level N is the ruled surface, where
// sigma_j . sigma_l = (e_j + e_l)/2; each blow-up below lowers every entry whose
// two sections both pass through the blown-up point.
// Throws kConcreteOnly for abstract families, kInvalidArgument for a bad level.
IntersectionMatrix level_matrix(const FamilyModel& family, int level);

struct IntersectionReport {
  Rational psi_sigma_B;
  Rational psi_tau_B;
  Rational delta_s_B;
  Rational delta_B;
  std::map<BoundaryKey, long long> boundary_counts;
};

IntersectionReport intersection_numbers(const FamilyModel& family);

// (F_Delta, F_sigma, F_tau, F_sigma_tau). F_sigma is 0 when n <= 1, F_tau when
// m <= 1, F_sigma_tau when nm = 0.
struct FValues {
  Rational f_delta;
  Rational f_sigma;
  Rational f_tau;
  Rational f_sigma_tau;

  friend bool operator==(const FValues&, const FValues&) = default;
};

// Closed-form decrease of the four potentials across a blow-down meeting r1
// light and r2 heavy sections.
FValues step_drops(const WeightVector& w, int r1, int r2);

// Telescoped from level N (abstract), and for concrete families also
// recomputed from the level matrix; disagreement throws
// kConcreteAbstractMismatch.
FValues f_values(const FamilyModel& family, int level);

// Requires concrete mode and equal psi_tau entries.
Rational evaluate_class(const DivisorClass& cls, const FamilyModel& family);

// a F_sigma(0) + b F_sigma_tau(0) + ((m - b)/m) F_tau(0) - F_Delta(0).
// Throws kInvalidCoefficients when m = 0 and b != 0.
Rational combination_value(const FamilyModel& family, const Rational& a, const Rational& b);

// Degree of a psi_sigma + b Delta_s + c (psi_tau - Delta) on a curve whose
// moving parts are the given factor families; the same-named class is
// evaluated on each factor and summed. Throws kShapeNotFunctorial unless the
// psi_tau coefficients equal minus the Delta coefficient and no boundary
// coefficient is present.
Rational stratified_evaluate(const DivisorClass& cls, const std::vector<FamilyModel>& parts);

}  // namespace m0a
