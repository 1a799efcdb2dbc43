#include "m0a/divisor_class.hpp"

#include "m0a/error.hpp"

#include <algorithm>

namespace m0a {

DivisorClass::DivisorClass(WeightVector w)
    : ambient(w), psi_tau(static_cast<std::size_t>(w.m())) {}

Rational DivisorClass::boundary_coefficient(const BoundaryKey& key) const {
  const auto it = boundary.find(key);
  return it == boundary.end() ? Rational(0) : it->second;
}

void DivisorClass::add_boundary(int i, int j, const Rational& value) {
  boundary[canonical_key(ambient, i, j)] += value;
}

bool DivisorClass::uniform_tau() const {
  return std::adjacent_find(psi_tau.begin(), psi_tau.end(), std::not_equal_to<>()) == psi_tau.end();
}

Rational DivisorClass::tau_coefficient() const {
  if (!uniform_tau()) {
    throw Error(ErrorKind::kUnequalTauCoefficients,
                "psi_tau entries differ; per-section degrees are not tracked");
  }
  return psi_tau.empty() ? Rational(0) : psi_tau.front();
}

bool DivisorClass::is_tautological() const {
  return std::all_of(boundary.begin(), boundary.end(),
                     [](const auto& entry) { return entry.second == 0; });
}

bool operator==(const DivisorClass& a, const DivisorClass& b) {
  if (a.ambient != b.ambient || a.psi_sigma != b.psi_sigma || a.psi_tau != b.psi_tau ||
      a.delta_s != b.delta_s || a.delta != b.delta) {
    return false;
  }
  for (const auto& [key, value] : a.boundary) {
    if (b.boundary_coefficient(key) != value) return false;
  }
  for (const auto& [key, value] : b.boundary) {
    if (a.boundary_coefficient(key) != value) return false;
  }
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (ambient != other.ambient) {
    throw Error(ErrorKind::kAmbientMismatch, ambient.str() + " vs " + other.ambient.str());
  }
  psi_sigma += other.psi_sigma;
  for (std::size_t j = 0; j < psi_tau.size(); ++j) psi_tau[j] += other.psi_tau[j];
  delta_s += other.delta_s;
  delta += other.delta;
  for (const auto& [key, value] : other.boundary) boundary[key] += value;
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& scalar) {
  psi_sigma *= scalar;
  for (auto& value : psi_tau) value *= scalar;
  delta_s *= scalar;
  delta *= scalar;
  for (auto& entry : boundary) entry.second *= scalar;
  return *this;
}

DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }

DivisorClass operator-(DivisorClass a, const DivisorClass& b) {
  return a += Rational(-1) * b;
}

DivisorClass operator*(const Rational& scalar, DivisorClass a) { return a *= scalar; }

DivisorClass zero_class(const WeightVector& w) { return DivisorClass(w); }

DivisorClass dk_class(const WeightVector& w, const Rational& c) {
  DivisorClass d(w);
  d.psi_sigma = c;
  std::fill(d.psi_tau.begin(), d.psi_tau.end(), Rational(1));
  d.delta_s = 2 * c - 1;
  d.delta = -1;
  return d;
}

LogCanonical log_canonical_class(int n, const Rational& alpha) {
  if (alpha < 0 || alpha > 1) {
    throw Error(ErrorKind::kAlphaOutOfRange, "alpha = " + to_string(alpha) + " not in [0, 1]");
  }
  const WeightVector w = make_weights(n, 0, 1);
  DivisorClass cls(w);
  cls.psi_sigma = 1;
  cls.delta = alpha - 2;
  const Rational c = alpha_to_c(alpha);
  return {cls, c, c * cls};
}

Rational alpha_c_convert(const Rational& x, Direction direction) {
  if (direction == Direction::kAlphaToC) {
    if (x == 2) throw Error(ErrorKind::kDivisionByZero, "alpha = 2 has no c");
    return 1 / (2 - x);
  }
  if (x == 0) throw Error(ErrorKind::kDivisionByZero, "c = 0 has no alpha");
  return 2 - 1 / x;
}

DivisorClass class_combine(const std::vector<std::pair<Rational, DivisorClass>>& terms) {
  if (terms.empty()) throw Error(ErrorKind::kEmptyCombination, "no terms to combine");
  DivisorClass out(terms.front().second.ambient);
  for (const auto& [scalar, cls] : terms) out += scalar * cls;
  return out;
}

}  // namespace m0a
