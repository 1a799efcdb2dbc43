#include "m0a/family.hpp"

#include "m0a/error.hpp"

#include <algorithm>
#include <set>

namespace m0a {

BlowdownStep BlowdownStep::counts(int r1, int r2) { return {r1, r2, {}, {}}; }

BlowdownStep BlowdownStep::sections(std::vector<int> sigma, std::vector<int> tau) {
  const int r1 = static_cast<int>(sigma.size());
  const int r2 = static_cast<int>(tau.size());
  return {r1, r2, std::move(sigma), std::move(tau)};
}

FamilyModel abstract_family(const WeightVector& w, const std::vector<std::pair<int, int>>& counts) {
  FamilyModel family{w, FamilyMode::kAbstract, {}, {}, {}};
  for (const auto& [r1, r2] : counts) family.steps.push_back(BlowdownStep::counts(r1, r2));
  return family;
}

namespace {

std::string step_path(std::size_t i) { return "steps[" + std::to_string(i) + "]"; }

void check_index_set(const std::vector<int>& indices, int bound, const std::string& path,
                     std::vector<Violation>& out) {
  std::set<int> seen;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const int index = indices[p];
    const std::string where = path + "[" + std::to_string(p) + "]";
    if (index < 1 || index > bound) {
      out.push_back({where, "index " + std::to_string(index) + " outside 1.." + std::to_string(bound)});
    } else if (!seen.insert(index).second) {
      out.push_back({where, "index " + std::to_string(index) + " repeated"});
    }
  }
}

IntersectionMatrix build_level_matrix(const FamilyModel& family, int level) {
  const int n = family.weights.n();
  const int size = family.weights.points();
  IntersectionMatrix mat(size);
  std::vector<long long> e(family.final_e_sigma);
  e.insert(e.end(), family.final_e_tau.begin(), family.final_e_tau.end());
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) mat(r, c) = r == c ? e[r] : (e[r] + e[c]) / 2;
  }
  std::vector<int> members;
  for (int step = family.length() - 1; step >= level; --step) {
    const BlowdownStep& s = family.steps[static_cast<std::size_t>(step)];
    members.clear();
    for (int j : s.sigma) members.push_back(j - 1);
    for (int j : s.tau) members.push_back(n + j - 1);
    for (int r : members) {
      for (int c : members) mat(r, c) -= 1;
    }
  }
  return mat;
}

}  // namespace

std::vector<Violation> validate_family(const FamilyModel& family) {
  std::vector<Violation> out;
  const WeightVector& w = family.weights;
  const int n = w.n();
  const int m = w.m();
  const int k = w.k();

  for (std::size_t i = 0; i < family.steps.size(); ++i) {
    const BlowdownStep& s = family.steps[i];
    const std::string path = step_path(i);
    if (s.r1 < 0 || s.r1 > n || s.r2 < 0 || s.r2 > m) {
      out.push_back({path, "counts (" + std::to_string(s.r1) + "," + std::to_string(s.r2) +
                               ") outside 0..n x 0..m"});
      continue;
    }
    if (!heavier_than_one(s.r1, s.r2, k)) {
      out.push_back({path, "contracted component unstable: r1/k + r2 = " +
                               to_string(Rational(s.r1, k) + s.r2) + " is not > 1"});
    }
    if (!heavier_than_one(n - s.r1, m - s.r2, k)) {
      out.push_back({path, "complement unstable: (n-r1)/k + (m-r2) = " +
                               to_string(Rational(n - s.r1, k) + (m - s.r2)) + " is not > 1"});
    }
    if (family.concrete()) {
      check_index_set(s.sigma, n, path + ".sigma", out);
      check_index_set(s.tau, m, path + ".tau", out);
      if (static_cast<int>(s.sigma.size()) != s.r1 || static_cast<int>(s.tau.size()) != s.r2) {
        out.push_back({path, "r1/r2 disagree with the listed sections"});
      }
    } else if (!s.sigma.empty() || !s.tau.empty()) {
      out.push_back({path, "abstract step lists sections"});
    }
  }

  if (!family.concrete()) {
    if (!family.final_e_sigma.empty() || !family.final_e_tau.empty()) {
      out.push_back({"final_e_sigma", "abstract family carries terminal self-intersections"});
    }
    return out;
  }

  if (static_cast<int>(family.final_e_sigma.size()) != n) {
    out.push_back({"final_e_sigma", "expected " + std::to_string(n) + " entries"});
  }
  if (static_cast<int>(family.final_e_tau.size()) != m) {
    out.push_back({"final_e_tau", "expected " + std::to_string(m) + " entries"});
  }
  if (!out.empty()) return out;

  std::vector<long long> e(family.final_e_sigma);
  e.insert(e.end(), family.final_e_tau.begin(), family.final_e_tau.end());
  for (std::size_t j = 1; j < e.size(); ++j) {
    if ((e[j] - e[0]) % 2 != 0) {
      const bool tau = static_cast<int>(j) >= n;
      const std::size_t idx = tau ? j - static_cast<std::size_t>(n) : j;
      out.push_back({std::string(tau ? "final_e_tau" : "final_e_sigma") + "[" + std::to_string(idx) + "]",
                     "parity differs from the first section; sections of a P^1-bundle differ by fibers"});
    }
  }
  if (!out.empty()) return out;

  const IntersectionMatrix bottom = build_level_matrix(family, 0);
  auto name = [n](int r) {
    return r < n ? "sigma" + std::to_string(r + 1) : "tau" + std::to_string(r - n + 1);
  };
  for (int r = 0; r < w.points(); ++r) {
    for (int c = r + 1; c < w.points(); ++c) {
      const long long value = bottom(r, c);
      const bool involves_tau = c >= n;
      if (involves_tau && value != 0) {
        out.push_back({"level0[" + name(r) + "," + name(c) + "]",
                       "weight-1 sections must be disjoint from all other sections, got " +
                           std::to_string(value)});
      } else if (!involves_tau && value < 0) {
        out.push_back({"level0[" + name(r) + "," + name(c) + "]",
                       "distinct sections meet negatively: " + std::to_string(value)});
      }
    }
  }
  return out;
}

void require_valid(const FamilyModel& family) {
  const auto violations = validate_family(family);
  if (!violations.empty()) {
    throw Error(ErrorKind::kInvalidFamily,
                violations.front().path + ": " + violations.front().message);
  }
}

IntersectionMatrix level_matrix(const FamilyModel& family, int level) {
  if (!family.concrete()) throw Error(ErrorKind::kConcreteOnly, "level_matrix needs section data");
  if (level < 0 || level > family.length()) {
    throw Error(ErrorKind::kInvalidArgument, "level " + std::to_string(level) + " outside 0.." +
                                                 std::to_string(family.length()));
  }
  require_valid(family);
  return build_level_matrix(family, level);
}

IntersectionReport intersection_numbers(const FamilyModel& family) {
  if (!family.concrete()) throw Error(ErrorKind::kConcreteOnly, "intersection numbers need section data");
  const IntersectionMatrix mat = level_matrix(family, 0);
  const int n = family.weights.n();
  IntersectionReport report;
  for (int r = 0; r < mat.size(); ++r) {
    if (r < n) {
      report.psi_sigma_B -= mat(r, r);
    } else {
      report.psi_tau_B -= mat(r, r);
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) report.delta_s_B += mat(r, c);
  }
  report.delta_B = family.length();
  for (const auto& step : family.steps) {
    report.boundary_counts[canonical_key(family.weights, step.r1, step.r2)] += 1;
  }
  return report;
}

FValues step_drops(const WeightVector& w, int r1, int r2) {
  const int n = w.n();
  const int m = w.m();
  FValues d;
  d.f_delta = 1;
  if (n >= 2) d.f_sigma = Rational(r1 * (n - r1), n - 1);
  if (m >= 2) d.f_tau = Rational(r2 * (m - r2), m - 1);
  if (n * m > 0) d.f_sigma_tau = Rational(r1 * (m - r2) + r2 * (n - r1), n * m);
  return d;
}

namespace {

FValues telescoped(const FamilyModel& family, int level) {
  FValues total;
  for (int i = level; i < family.length(); ++i) {
    const auto& s = family.steps[static_cast<std::size_t>(i)];
    const FValues d = step_drops(family.weights, s.r1, s.r2);
    total.f_delta += d.f_delta;
    total.f_sigma += d.f_sigma;
    total.f_tau += d.f_tau;
    total.f_sigma_tau += d.f_sigma_tau;
  }
  return total;
}

// Sums of squared section differences on C_level.
FValues from_matrix(const FamilyModel& family, int level) {
  const IntersectionMatrix mat = build_level_matrix(family, level);
  const int n = family.weights.n();
  const int m = family.weights.m();
  auto square_of_difference = [&mat](int a, int b) { return mat(a, a) + mat(b, b) - 2 * mat(a, b); };
  FValues v;
  v.f_delta = family.length() - level;
  if (n >= 2) {
    long long sum = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) sum += square_of_difference(a, b);
    }
    v.f_sigma = Rational(-sum, n - 1);
  }
  if (m >= 2) {
    long long sum = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) sum += square_of_difference(n + a, n + b);
    }
    v.f_tau = Rational(-sum, m - 1);
  }
  if (n * m > 0) {
    long long sum = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < m; ++b) sum += square_of_difference(a, n + b);
    }
    v.f_sigma_tau = Rational(-sum, n * m);
  }
  return v;
}

}  // namespace

FValues f_values(const FamilyModel& family, int level) {
  if (level < 0 || level > family.length()) {
    throw Error(ErrorKind::kInvalidArgument, "level " + std::to_string(level) + " outside 0.." +
                                                 std::to_string(family.length()));
  }
  require_valid(family);
  const FValues closed = telescoped(family, level);
  if (family.concrete()) {
    const FValues direct = from_matrix(family, level);
    if (!(direct == closed)) {
      throw Error(ErrorKind::kConcreteAbstractMismatch,
                  "level " + std::to_string(level) + ": sums of squares disagree with the step counts");
    }
  }
  return closed;
}

Rational evaluate_class(const DivisorClass& cls, const FamilyModel& family) {
  if (cls.ambient != family.weights) {
    throw Error(ErrorKind::kAmbientMismatch, cls.ambient.str() + " vs family " + family.weights.str());
  }
  const Rational tau = cls.tau_coefficient();
  const IntersectionReport report = intersection_numbers(family);
  Rational value = cls.psi_sigma * report.psi_sigma_B + tau * report.psi_tau_B +
                   cls.delta_s * report.delta_s_B + cls.delta * report.delta_B;
  for (const auto& [key, count] : report.boundary_counts) value += cls.boundary_coefficient(key) * count;
  return value;
}

Rational combination_value(const FamilyModel& family, const Rational& a, const Rational& b) {
  const int m = family.weights.m();
  if (m == 0 && b != 0) {
    throw Error(ErrorKind::kInvalidCoefficients, "b must be 0 when there are no weight-1 sections");
  }
  const FValues f = f_values(family, 0);
  Rational value = a * f.f_sigma - f.f_delta;
  if (m > 0) value += b * f.f_sigma_tau + (m - b) / m * f.f_tau;
  return value;
}

Rational stratified_evaluate(const DivisorClass& cls, const std::vector<FamilyModel>& parts) {
  if (!cls.is_tautological()) {
    throw Error(ErrorKind::kShapeNotFunctorial, "boundary coefficients do not restrict factorwise");
  }
  const Rational tau = cls.tau_coefficient();
  if (cls.ambient.m() > 0 && tau != -cls.delta) {
    throw Error(ErrorKind::kShapeNotFunctorial,
                "psi_tau coefficient " + to_string(tau) + " differs from -Delta coefficient " +
                    to_string(-cls.delta));
  }
  Rational total;
  for (const auto& part : parts) {
    DivisorClass same_named(part.weights);
    same_named.psi_sigma = cls.psi_sigma;
    same_named.delta_s = cls.delta_s;
    same_named.delta = cls.delta;
    std::fill(same_named.psi_tau.begin(), same_named.psi_tau.end(), -cls.delta);
    total += evaluate_class(same_named, part);
  }
  return total;
}

}  // namespace m0a
