#pragma once

#include "m0a/rational.hpp"

#include <compare>
#include <string>

namespace m0a {

// The weight vector with n sections of weight 1/k and m sections of weight 1.
// Only constructible through make_weights, so every instance satisfies
// m + n/k > 2.
class WeightVector {
 public:
  int n() const { return n_; }
  int m() const { return m_; }
  int k() const { return k_; }

  // Number of marked points; the moduli space has dimension points() - 3.
  int points() const { return n_ + m_; }
  int dimension() const { return n_ + m_ - 3; }

  // True when light sections can never collide (k == 1, or at most one light
  // section), so the collision class is identically zero.
  bool collision_free() const { return k_ == 1 || n_ <= 1; }

  std::string str() const;

  friend auto operator<=>(const WeightVector&, const WeightVector&) = default;

 private:
  friend WeightVector make_weights(int n, int m, int k);
  WeightVector(int n, int m, int k) : n_(n), m_(m), k_(k) {}

  int n_;
  int m_;
  int k_;
};

// Throws Error(kInvalidWeights) unless k >= 1, n >= 0, m >= 0, m + n/k > 2.
WeightVector make_weights(int n, int m, int k);

bool weights_valid(int n, int m, int k);

// i/k + j > 1, computed without division.
constexpr bool heavier_than_one(int i, int j, int k) { return i + j * k > k; }

// Aggregated nodal boundary divisor: one side carries i light and j heavy
// sections. Stored in canonical form (i, j) <= (n - i, m - j).
struct BoundaryKey {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const BoundaryKey&, const BoundaryKey&) = default;
};

// Canonical representative of the partition with one side (i, j). Throws
// Error(kInvalidArgument) when the node is not admissible on `w` (some side
// of weight <= 1) or the counts are out of range.
BoundaryKey canonical_key(const WeightVector& w, int i, int j);

bool key_admissible(const WeightVector& w, int i, int j);

}  // namespace m0a
