#include "m0a/morphisms.hpp"

#include "m0a/error.hpp"

#include <utility>

namespace m0a {

std::string morphism_kind_name(MorphismKind kind) {
  switch (kind) {
    case MorphismKind::kReductionFromUnweighted: return "reduction_from_unweighted";
    case MorphismKind::kReductionStep: return "reduction_step";
    case MorphismKind::kReplacement: return "replacement";
  }
  return "?";
}

MorphismSpec make_morphism(MorphismKind kind, const WeightVector& target) {
  const int n = target.n();
  const int m = target.m();
  const int k = target.k();
  switch (kind) {
    case MorphismKind::kReductionFromUnweighted:
      if (k < 2) throw Error(ErrorKind::kInvalidMorphism, "reduction needs k >= 2, target " + target.str());
      return {kind, make_weights(n + m, 0, 1), target};
    case MorphismKind::kReductionStep:
      if (k < 2) throw Error(ErrorKind::kInvalidMorphism, "reduction step needs k >= 2, target " + target.str());
      return {kind, make_weights(n, m, k - 1), target};
    case MorphismKind::kReplacement:
      if (n < k) {
        throw Error(ErrorKind::kInvalidMorphism,
                    "replacement needs n >= k light sections, target " + target.str());
      }
      return {kind, make_weights(n - k, m + 1, k), target};
  }
  throw Error(ErrorKind::kInvalidMorphism, "unknown morphism kind");
}

std::optional<BoundaryKey> exceptional_key(const MorphismSpec& spec) {
  if (spec.kind != MorphismKind::kReductionStep) return std::nullopt;
  const int k = spec.target.k();
  if (!key_admissible(spec.source, k, 0)) return std::nullopt;
  return canonical_key(spec.source, k, 0);
}

namespace {

void require_tautological(const DivisorClass& cls, const char* what) {
  for (const auto& [key, value] : cls.boundary) {
    if (value != 0) {
      throw Error(ErrorKind::kUnsupportedCoefficient,
                  std::string(what) + " has no rule for boundary[" + std::to_string(key.i) + "," +
                      std::to_string(key.j) + "]");
    }
  }
}

}  // namespace

DivisorClass pushforward_reduction(const DivisorClass& cls, const WeightVector& target) {
  const MorphismSpec spec = make_morphism(MorphismKind::kReductionFromUnweighted, target);
  if (cls.ambient != spec.source) {
    throw Error(ErrorKind::kAmbientMismatch,
                "push-forward expects a class on " + spec.source.str() + ", got " + cls.ambient.str());
  }
  require_tautological(cls, "push-forward");
  if (cls.delta_s != 0) {
    throw Error(ErrorKind::kUnsupportedCoefficient, "the unweighted space carries no Delta_s");
  }
  DivisorClass out(target);
  out.psi_sigma = cls.psi_sigma;
  for (auto& entry : out.psi_tau) entry = cls.psi_sigma;
  out.delta_s = 2 * cls.psi_sigma + cls.delta;
  out.delta = cls.delta;
  return out;
}

DivisorClass pullback_reduction(const DivisorClass& cls) {
  const MorphismSpec spec = make_morphism(MorphismKind::kReductionStep, cls.ambient);
  require_tautological(cls, "pull-back along the reduction");
  const int k = spec.target.k();
  DivisorClass out(spec.source);
  out.psi_sigma = cls.psi_sigma;
  out.psi_tau = cls.psi_tau;
  out.delta_s = cls.delta_s;
  out.delta = cls.delta;
  if (const auto f = exceptional_key(spec)) {
    out.boundary[*f] = -k * cls.psi_sigma + binomial2(k) * cls.delta_s - cls.delta;
  }
  return out;
}

DivisorClass pullback_replacement(const DivisorClass& cls) {
  const MorphismSpec spec = make_morphism(MorphismKind::kReplacement, cls.ambient);
  require_tautological(cls, "pull-back along the replacement");
  const int k = spec.target.k();
  DivisorClass out(spec.source);
  out.psi_sigma = cls.psi_sigma;
  for (std::size_t j = 0; j < cls.psi_tau.size(); ++j) out.psi_tau[j] = cls.psi_tau[j];
  out.psi_tau.back() = k * cls.psi_sigma - binomial2(k) * cls.delta_s;
  out.delta_s = cls.delta_s;
  out.delta = cls.delta;
  return out;
}

namespace {

SurfaceNumbers surface_numbers(const FamilyModel& family) {
  const IntersectionReport report = intersection_numbers(family);
  return {report.psi_sigma_B + report.psi_tau_B, report.delta_s_B, report.delta_B};
}

}  // namespace

PushforwardDerivation derive_pushforward_constants(int n) {
  if (n < 5) throw Error(ErrorKind::kInvalidArgument, "push-forward derivation needs n >= 5");

  // P^1 x P^1 with n-1 constant sections and the diagonal: e = 0 and 2.
  FamilyModel diagonal{make_weights(n, 0, 2), FamilyMode::kConcrete, {}, {}, {}};
  diagonal.final_e_sigma.assign(static_cast<std::size_t>(n), 0);
  diagonal.final_e_sigma.back() = 2;

  // The same surface with each crossing sigma_j . sigma_n blown up.
  FamilyModel blown_up{make_weights(n, 0, 1), FamilyMode::kConcrete, {}, diagonal.final_e_sigma, {}};
  for (int j = 1; j < n; ++j) blown_up.steps.push_back(BlowdownStep::sections({j, n}, {}));

  PushforwardDerivation out;
  out.n = n;
  out.diagonal = surface_numbers(diagonal);
  out.blown_up = surface_numbers(blown_up);
  // psi.B^s = psi.B + a Delta_s.B  and  Delta.B^s = Delta.B + b Delta_s.B
  out.a = (out.blown_up.psi_B - out.diagonal.psi_B) / out.diagonal.delta_s_B;
  out.b = (out.blown_up.delta_B - out.diagonal.delta_B) / out.diagonal.delta_s_B;
  return out;
}

FamilyModel pullback_test_stratum(int k) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "test stratum needs k >= 2");
  FamilyModel stratum{make_weights(k, 1, k - 1), FamilyMode::kConcrete, {}, {}, {-1}};
  stratum.final_e_sigma.assign(static_cast<std::size_t>(k), 1);
  return stratum;
}

PullbackDerivation derive_pullback_constant(int n, int m, int k) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "pull-back derivation needs k >= 2");
  const MorphismSpec spec = make_morphism(MorphismKind::kReductionStep, make_weights(n, m, k));
  if (!exceptional_key(spec)) {
    throw Error(ErrorKind::kInvalidArgument, "no exceptional divisor on " + spec.source.str());
  }

  const FamilyModel stratum = pullback_test_stratum(k);
  const IntersectionReport moving = intersection_numbers(stratum);
  const IntersectionMatrix bottom = level_matrix(stratum, 0);
  // The other component is a trivial family: its sections, the heavy ones
  // included, are constant and contribute nothing. The single node runs
  // along E, whose normal degrees are E^2 = -1 and 0 on the two sides.
  const Rational e_squared = bottom(k, k);

  PullbackDerivation out;
  out.k = k;
  out.psi_sigma_B = moving.psi_sigma_B;
  out.psi_tau_B = 0;
  out.delta_s_B = moving.delta_s_B;
  out.delta_B = e_squared + 0;
  out.f_B = out.delta_B;  // the node separates exactly the k light sections
  out.psi_sigma_constant = -out.psi_sigma_B / out.f_B;
  out.psi_tau_constant = -out.psi_tau_B / out.f_B;
  out.delta_s_constant = -out.delta_s_B / out.f_B;
  out.delta_constant = -out.delta_B / out.f_B;
  return out;
}

}  // namespace m0a
