#pragma once

// Independent re-derivations used as test oracles. Nothing in here calls the
// library routine it is meant to check.

#include "m0a/family.hpp"
#include "m0a/rational.hpp"

#include <random>
#include <utility>
#include <vector>

namespace m0a::oracle {

// Grid scan with rational comparisons r1/k + r2 > 1 (no integer shortcut).
std::vector<std::pair<int, int>> admissible(int n, int m, int k);

// H(r1, r2) written out term by term as in the drop formula, including the
// (m - b)/m factor on the tau term and the m <= 1, nm = 0 conventions.
Rational h_value(int n, int m, const Rational& a, const Rational& b, int r1, int r2);

// D_k(c) F-coefficient after pulling back: -ck + (2c-1)k(k-1)/2 + 1.
Rational f_coefficient(int k, const Rational& c);

// Per-step drops of the four potentials, written from the closed forms.
struct Drops {
  Rational delta, sigma, tau, sigma_tau;
};
Drops step_drops(int n, int m, int r1, int r2);

// Section intersection matrix at level 0, by replaying the blow-ups from the
// ruled surface: each blow-up through a set S lowers every S x S entry by 1.
std::vector<std::vector<long long>> replay_matrix(const FamilyModel& family);

// Random concrete family with n + m <= max_points and at most max_steps
// blow-downs, built by blowing up points where the chosen sections currently
// meet positively. Retries until validate_family accepts it.
FamilyModel random_concrete_family(std::mt19937_64& rng, int max_points, int max_steps);

// Every sequence of admissible (r1, r2) of length 0..max_length.
std::vector<std::vector<std::pair<int, int>>> step_sequences(int n, int m, int k, int max_length);

Rational random_rational(std::mt19937_64& rng, int num_bound, int den_bound);

}  // namespace m0a::oracle
