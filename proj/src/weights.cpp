#include "m0a/weights.hpp"

#include "m0a/error.hpp"

#include <tuple>

namespace m0a {

bool weights_valid(int n, int m, int k) {
  return k >= 1 && n >= 0 && m >= 0 && m * k + n > 2 * k;
}

WeightVector make_weights(int n, int m, int k) {
  if (!weights_valid(n, m, k)) {
    throw Error(ErrorKind::kInvalidWeights,
                "(n, m, k) = (" + std::to_string(n) + ", " + std::to_string(m) + ", " +
                    std::to_string(k) + ") needs k >= 1, n, m >= 0 and m + n/k > 2");
  }
  return WeightVector(n, m, k);
}

std::string WeightVector::str() const {
  return "(" + std::to_string(n_) + "," + std::to_string(m_) + "," + std::to_string(k_) + ")";
}

bool key_admissible(const WeightVector& w, int i, int j) {
  if (i < 0 || j < 0 || i > w.n() || j > w.m()) return false;
  return heavier_than_one(i, j, w.k()) && heavier_than_one(w.n() - i, w.m() - j, w.k());
}

BoundaryKey canonical_key(const WeightVector& w, int i, int j) {
  if (!key_admissible(w, i, j)) {
    throw Error(ErrorKind::kInvalidArgument, "boundary key (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") is not a nodal divisor on " +
                                                 w.str());
  }
  const int ci = w.n() - i;
  const int cj = w.m() - j;
  if (std::tie(ci, cj) < std::tie(i, j)) return {ci, cj};
  return {i, j};
}

}  // namespace m0a
