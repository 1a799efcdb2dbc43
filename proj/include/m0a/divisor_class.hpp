#pragma once

#include "m0a/rational.hpp"
#include "m0a/weights.hpp"

#include <map>
#include <utility>
#include <vector>

namespace m0a {

// A divisor class on the weighted space, in the basis
//   psi_sigma, psi_tau_1 .. psi_tau_m, Delta_s, Delta, Delta_{i,j}.
// Numerical and linear equivalence are taken to coincide, so a class is just
// its coefficient record.
struct DivisorClass {
  explicit DivisorClass(WeightVector w);

  WeightVector ambient;
  Rational psi_sigma;
  std::vector<Rational> psi_tau;  // one entry per weight-1 section
  Rational delta_s;
  Rational delta;
  std::map<BoundaryKey, Rational> boundary;

  // Coefficient of Delta_{key}; 0 when the key is absent.
  Rational boundary_coefficient(const BoundaryKey& key) const;

  // Adds `value` to the coefficient of the canonical form of (i, j).
  void add_boundary(int i, int j, const Rational& value);

  // True when every psi_tau entry agrees (vacuously for m = 0).
  bool uniform_tau() const;
  // The common psi_tau value; 0 when m = 0. Throws kUnequalTauCoefficients.
  Rational tau_coefficient() const;

  bool is_tautological() const;

  // Componentwise equality; absent boundary keys count as 0.
  friend bool operator==(const DivisorClass& a, const DivisorClass& b);

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator*=(const Rational& scalar);
};

DivisorClass operator+(DivisorClass a, const DivisorClass& b);
DivisorClass operator-(DivisorClass a, const DivisorClass& b);
DivisorClass operator*(const Rational& scalar, DivisorClass a);

DivisorClass zero_class(const WeightVector& w);

// D_k(c) = c psi_sigma + (2c - 1) Delta_s + psi_tau - Delta.
DivisorClass dk_class(const WeightVector& w, const Rational& c);

struct LogCanonical {
  DivisorClass cls;         // psi + (alpha - 2) Delta
  Rational c;               // 1 / (2 - alpha)
  DivisorClass normalized;  // c psi - Delta, the 1/(2 - alpha) multiple
};

// K + alpha Delta on the unweighted space with n points (weights (n, 0, 1)).
// Throws kAlphaOutOfRange unless 0 <= alpha <= 1.
LogCanonical log_canonical_class(int n, const Rational& alpha);

enum class Direction { kAlphaToC, kCToAlpha };

// alpha -> 1/(2 - alpha), c -> 2 - 1/c. Throws kDivisionByZero at the poles.
Rational alpha_c_convert(const Rational& x, Direction direction);
inline Rational alpha_to_c(const Rational& alpha) { return alpha_c_convert(alpha, Direction::kAlphaToC); }
inline Rational c_to_alpha(const Rational& c) { return alpha_c_convert(c, Direction::kCToAlpha); }

// Exact linear combination. Throws kAmbientMismatch, or kEmptyCombination for
// an empty list.
DivisorClass class_combine(const std::vector<std::pair<Rational, DivisorClass>>& terms);

}  // namespace m0a
