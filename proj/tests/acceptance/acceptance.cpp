// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include "m0a/divisor_class.hpp"
#include "m0a/family.hpp"
#include "m0a/morphisms.hpp"
#include "m0a/positivity.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace m0a;

namespace {

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (notes_.size() < 5) notes_.push_back(what);
    }
  }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  int checks() const { return checks_; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failures_ > 0) s << ", " << failures_ << " failed";
    for (const auto& n : notes_) s << "; " << n;
    return s.str();
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> notes_;
};

std::string str(const Rational& x) { return to_string(x); }

void pushforward_constants(Check& check) {
  for (int n = 5; n <= 12; ++n) {
    const PushforwardDerivation d = derive_pushforward_constants(n);
    check.expect(d.a == 2 && d.b == 1,
                 "n=" + std::to_string(n) + " gave (" + str(d.a) + "," + str(d.b) + ")");
    // the derivation must come from the curve: the projection formula holds
    check.expect(d.diagonal.psi_B + d.a * d.diagonal.delta_s_B == d.blown_up.psi_B, "psi projection n=" + std::to_string(n));
    check.expect(d.diagonal.delta_B + d.b * d.diagonal.delta_s_B == d.blown_up.delta_B,
                 "Delta projection n=" + std::to_string(n));
  }
}

void pullback_constants(Check& check) {
  for (int k = 2; k <= 10; ++k) {
    const PullbackDerivation d = derive_pullback_constant(2 * k + 1, 0, k);
    const std::string tag = "k=" + std::to_string(k);
    check.expect(d.psi_sigma_B == -k, tag + " psi_sigma.B=" + str(d.psi_sigma_B));
    check.expect(d.delta_s_B == binomial2(k), tag + " Delta_s.B=" + str(d.delta_s_B));
    check.expect(d.delta_B == -1, tag + " Delta.B=" + str(d.delta_B));
    check.expect(d.f_B == -1, tag + " F.B=" + str(d.f_B));
    check.expect(d.psi_sigma_constant == -k, tag + " constant " + str(d.psi_sigma_constant));
    // the constant solves 0 = psi_sigma.B + x F.B
    check.expect(d.psi_sigma_B + d.psi_sigma_constant * d.f_B == 0, tag + " defining relation");
  }
}

void functoriality(Check& check) {
  for (int k = 2; k <= 20; ++k) {
    const Rational hi(k + 1, 2 * k);
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2 * k + 1, 0}, {k + 2, 1}, {k, 2}, {k + 3, 3}}) {
      if (!weights_valid(n, m, k)) continue;
      const WeightVector w = make_weights(n, m, k);
      const DivisorClass pulled = pullback_reduction(dk_class(w, hi));
      check.expect(pulled == dk_class(make_weights(n, m, k - 1), hi), "identity fails on " + w.str());
      const auto f = exceptional_key(make_morphism(MorphismKind::kReductionStep, w));
      if (f) {
        check.expect(pulled.boundary.count(*f) == 1 && pulled.boundary.at(*f) == 0,
                     "exceptional coefficient on " + w.str());
        check.expect(oracle::f_coefficient(k, hi) == 0, "oracle F coefficient k=" + std::to_string(k));
      }
    }
  }
}

void replacement(Check& check) {
  for (int k = 2; k <= 10; ++k) {
    const Rational hi(k + 1, 2 * k);
    for (const Rational& eps : {Rational(1, 100), Rational(1, 7)}) {
      for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2 * k + 1, 0}, {k + 1, 1}, {k, 2}}) {
        if (!weights_valid(n, m, k)) continue;
        const WeightVector w = make_weights(n, m, k);
        const DivisorClass pulled = pullback_replacement(dk_class(w, hi + eps));
        DivisorClass expected = dk_class(make_weights(n - k, m + 1, k), hi + eps);
        expected.psi_tau.back() = 1 - eps * k * (k - 2);
        check.expect(pulled == expected, "k=" + std::to_string(k) + " eps=" + str(eps) + " on " + w.str());
      }
    }
  }
}

void telescoping(Check& check) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const FamilyModel f = oracle::random_concrete_family(rng, 8, 6);
    const int n = f.weights.n();
    const int m = f.weights.m();
    for (int level = 0; level < f.length(); ++level) {
      const FValues here = f_values(f, level);
      const FValues next = f_values(f, level + 1);
      const auto& s = f.steps[static_cast<std::size_t>(level)];
      const oracle::Drops d = oracle::step_drops(n, m, s.r1, s.r2);
      check.expect(here.f_delta - next.f_delta == d.delta && here.f_sigma - next.f_sigma == d.sigma &&
                       here.f_tau - next.f_tau == d.tau && here.f_sigma_tau - next.f_sigma_tau == d.sigma_tau,
                   "drop mismatch on " + f.weights.str() + " level " + std::to_string(level));
    }
    const FValues zero = f_values(f, 0);
    const IntersectionReport r = intersection_numbers(f);
    FValues expected;
    expected.f_delta = r.delta_B;
    if (n >= 2) expected.f_sigma = r.psi_sigma_B + 2 * r.delta_s_B / (n - 1);
    if (m >= 2) expected.f_tau = r.psi_tau_B;
    if (n * m > 0) expected.f_sigma_tau = r.psi_sigma_B / n + r.psi_tau_B / m;
    check.expect(zero == expected, "level-0 identities on " + f.weights.str());
    check.expect(r.delta_B == f.length(), "Delta.B = N on " + f.weights.str());
  }
}

void thresholds(Check& check) {
  for (int k = 2; k <= 4; ++k) {
    for (int n = 0; n <= 10; ++n) {
      for (int m = 0; n + m <= 10; ++m) {
        if (!weights_valid(n, m, k)) continue;
        const WeightVector w = make_weights(n, m, k);
        const Threshold t = threshold_c(w);
        bool shape = false;
        if (m == 0) shape = t.case_id == 1 && t.is_point() && t.lower == Rational(n - 1, 2 * (n - 2));
        if (m == 1 && n >= k + 2) shape = t.case_id == 2 && t.is_point() && t.lower == Rational(n + 1, 2 * n);
        if (m == 1 && n == k + 1) shape = t.case_id == 5 && t.equality && t.lower == Rational(k + 2, 2 * (k + 1));
        if (m >= 2 && n >= 2 && n <= k) shape = t.case_id == 3 && t.upper == Rational(k + 2, 2 * (k + 1));
        if (m >= 2 && n >= k + 1) shape = t.case_id == 4 && t.upper == Rational(n + 1, 2 * n) && t.upper_open;
        if (m >= 2 && n <= 1) shape = t.case_id == 6;
        check.expect(shape, "case data on " + w.str() + ": " + t.describe());

        const Certificate cert = certify_generic(w, c0_lower(w).c0);
        const bool empty = admissible_pairs(w).empty();
        if (empty) {
          check.expect(cert.verdict == Verdict::kNonnegativeZeroCharacterized && !cert.witness,
                       "empty admissible set should give the zero verdict on " + w.str());
        } else {
          check.expect(cert.witness && cert.witness->value > 0 && cert.verdict == Verdict::kStrictlyPositive,
                       "min drop not positive on " + w.str());
        }
        if (t.case_id == 5) check.expect(empty, "case 5 with steps on " + w.str());
      }
    }
  }
  check.expect(threshold_c(make_weights(7, 0, 2)).lower == Rational(3, 5), "c(7,0,2)");
  check.expect(threshold_c(make_weights(5, 1, 3)).lower == Rational(3, 5), "c(5,1,3)");
  const Threshold five = threshold_c(make_weights(4, 1, 3));
  check.expect(five.lower == Rational(5, 8) && five.equality, "c(4,1,3)");
}

void sharp_zero_curve(Check& check) {
  for (int k = 2; k <= 10; ++k) {
    const Rational hi(k + 1, 2 * k);
    const FamilyModel part = pullback_test_stratum(k);
    const Rational value = stratified_evaluate(dk_class(part.weights, hi), {part});
    check.expect(value == 0, "stratified degree " + str(value) + " for k=" + std::to_string(k));
    // the same degree from the listed test-curve numbers
    const Rational listed = hi * -k + (2 * hi - 1) * binomial2(k) - (-1);
    check.expect(listed == 0, "listed numbers k=" + std::to_string(k));
  }
  for (int k = 2; k <= 4; ++k) {
    const Rational lo(k + 2, 2 * (k + 1));
    for (const auto& w : {make_weights(2 * k + 2, 0, k), make_weights(k + 2, 1, k), make_weights(k + 1, 2, k)}) {
      const Certificate cert = certify_interval(w, lo);
      const WeightVector shape = make_weights(k + 1, 1, k);
      const bool listed = std::find(cert.zero_strata.begin(), cert.zero_strata.end(), shape) != cert.zero_strata.end();
      check.expect(cert.verdict == Verdict::kNonnegativeZeroCharacterized && listed,
                   "lower endpoint on " + w.str() + " gave " + verdict_name(cert.verdict));
    }
  }
}

void ample_certification(Check& check) {
  std::mt19937_64 rng(8);
  int sampled = 0;
  int perturbed = 0;
  while (sampled < 50) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int n = static_cast<int>(rng() % 10);
    const int m = static_cast<int>(rng() % 10);
    if (n + m > 9 || !weights_valid(n, m, k)) continue;
    const WeightVector w = make_weights(n, m, k);
    const AmpleInterval iv = ample_interval(k);
    const Rational t(1 + static_cast<int>(rng() % 59), 60);
    const Rational c = iv.lo + (*iv.hi - iv.lo) * t;
    ++sampled;
    const Certificate cert = certify_interval(w, c);
    const std::string tag = w.str() + " c=" + str(c);
    check.expect(cert.verdict == Verdict::kStrictlyPositive, tag + " " + verdict_name(cert.verdict));
    // no margin means no boundary step exists on w, so perturbations act on nothing
    check.expect(!cert.margin || *cert.margin > 0, tag + " margin");
    if (!cert.margin || !cert.witness) continue;
    ++perturbed;
    const BoundaryKey key = canonical_key(w, cert.witness->r1, cert.witness->r2);
    const Certificate half = perturbed_certify(w, c, {{key, -*cert.margin / 2}});
    check.expect(half.verdict == Verdict::kStrictlyPositive, tag + " half-margin");
    const Certificate full = perturbed_certify(w, c, {{key, -*cert.margin}});
    check.expect(full.verdict != Verdict::kStrictlyPositive, tag + " exact cancellation");
  }
  check.expect(perturbed >= 25, "too few finite margins: " + std::to_string(perturbed));
}

void brute_force(Check& check) {
  for (const auto& w : {make_weights(5, 0, 2), make_weights(3, 2, 2), make_weights(7, 0, 2), make_weights(5, 1, 3)}) {
    const Certificate generic = certify_generic(w, c0_lower(w).c0);
    const AmpleInterval iv = ample_interval(w.k());
    const Rational mid = (iv.lo + *iv.hi) / 2;
    const Certificate interior = certify_interval(w, mid);
    for (const auto& seq : oracle::step_sequences(w.n(), w.m(), w.k(), 3)) {
      const FamilyModel f = abstract_family(w, seq);
      check.expect(validate_family(f).empty(), "sequence rejected on " + w.str());
      Rational sum;
      Rational scaled;
      for (const auto& [r1, r2] : seq) {
        sum += drop_value(w, generic.coeffs, r1, r2);
        scaled += drop_value(w, interior.coeffs, r1, r2);
        check.expect(drop_value(w, generic.coeffs, r1, r2) ==
                         oracle::h_value(w.n(), w.m(), *generic.a, *generic.b, r1, r2),
                     "drop formula on " + w.str());
      }
      check.expect(combination_value(f, *generic.a, *generic.b) == sum, "sequence sum on " + w.str());
      if (seq.empty()) continue;
      if (generic.verdict == Verdict::kStrictlyPositive) check.expect(sum > 0, "generic claim on " + w.str());
      if (interior.verdict == Verdict::kStrictlyPositive && interior.witness_weights == w) {
        check.expect(scaled > 0, "interior claim on " + w.str());
      }
    }
    check.expect(generic.verdict != Verdict::kInconclusive, "inconclusive generic on " + w.str());
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "push-forward constants (2,1) from the diagonal family, n=5..12", pushforward_constants},
      {2, "pull-back constant -k from the test-curve numbers, k=2..10", pullback_constants},
      {3, "pull-back of D_k((k+1)/(2k)) is D_{k-1}((k+1)/(2k)) with F coefficient 0, k=2..20", functoriality},
      {4, "replacement pull-back correction -eps k(k-2) psi_tau, k=2..10", replacement},
      {5, "telescoped drops and level-0 identities on 200 random families", telescoping},
      {6, "threshold cases on k=2..4, n+m<=10, and generic drops at c0", thresholds},
      {7, "stratified zero curve and lower-endpoint zero locus", sharp_zero_curve},
      {8, "interior certificates with margins and perturbations, 50 samples", ample_certification},
      {9, "exhaustive step sequences of length <= 3 against issued certificates", brute_force},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << (check.ok() ? "PASS" : "FAIL") << "\tcriterion " << c.id << "\t" << c.name << "\t("
              << check.summary() << ", " << ms.count() << " ms)\n";
    if (!check.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
