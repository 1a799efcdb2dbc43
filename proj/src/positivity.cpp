#include "m0a/positivity.hpp"

#include "m0a/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace m0a {

CoefficientVector CoefficientVector::from_ab(int m, const Rational& a, const Rational& b) {
  CoefficientVector v;
  v.a_sigma = a;
  v.a_sigma_tau = b;
  v.a_tau = m > 0 ? (m - b) / m : Rational(0);
  v.a_delta = 1;
  return v;
}

CoefficientVector CoefficientVector::scaled(const Rational& lambda) const {
  return {lambda * a_sigma, lambda * a_tau, lambda * a_sigma_tau, lambda * a_delta};
}

std::vector<std::pair<int, int>> admissible_pairs(const WeightVector& w) {
  std::vector<std::pair<int, int>> out;
  for (int r1 = 0; r1 <= w.n(); ++r1) {
    for (int r2 = 0; r2 <= w.m(); ++r2) {
      if (key_admissible(w, r1, r2)) out.emplace_back(r1, r2);
    }
  }
  return out;
}

Rational drop_value(const WeightVector& w, const CoefficientVector& coeffs, int r1, int r2) {
  const FValues d = step_drops(w, r1, r2);
  return coeffs.a_sigma * d.f_sigma + coeffs.a_tau * d.f_tau + coeffs.a_sigma_tau * d.f_sigma_tau -
         coeffs.a_delta * d.f_delta;
}

namespace {

bool better(const DropEvaluation& x, const DropEvaluation& y) {
  if (x.value != y.value) return x.value < y.value;
  return std::pair(x.r1, x.r2) < std::pair(y.r1, y.r2);
}

}  // namespace

std::optional<DropEvaluation> min_drop_serial(const WeightVector& w, const CoefficientVector& coeffs) {
  std::optional<DropEvaluation> best;
  for (const auto& [r1, r2] : admissible_pairs(w)) {
    DropEvaluation here{r1, r2, drop_value(w, coeffs, r1, r2)};
    if (!best || better(here, *best)) best = std::move(here);
  }
  return best;
}

std::optional<DropEvaluation> min_drop(const WeightVector& w, const CoefficientVector& coeffs) {
  const auto pairs = admissible_pairs(w);
  const long long count = static_cast<long long>(pairs.size());
  std::optional<DropEvaluation> best;
#pragma omp parallel
  {
    std::optional<DropEvaluation> local;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < count; ++i) {
      const auto [r1, r2] = pairs[static_cast<std::size_t>(i)];
      DropEvaluation here{r1, r2, drop_value(w, coeffs, r1, r2)};
      if (!local || better(here, *local)) local = std::move(here);
    }
#pragma omp critical(m0a_min_drop)
    {
      if (local && (!best || better(*local, *best))) best = std::move(local);
    }
  }
  return best;
}

std::vector<Rational> g_series(const FamilyModel& family, const CoefficientVector& coeffs) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(family.length()) + 1);
  for (int i = 0; i <= family.length(); ++i) {
    const FValues f = f_values(family, i);
    out.push_back(coeffs.a_sigma * f.f_sigma + coeffs.a_tau * f.f_tau +
                  coeffs.a_sigma_tau * f.f_sigma_tau - coeffs.a_delta * f.f_delta);
  }
  return out;
}

PositivityCase positivity_case(const WeightVector& w, const Rational& a, const Rational& b) {
  const int n = w.n();
  const int m = w.m();
  const int k = w.k();
  if (m == 0) {
    return {1, a > Rational(n - 1, (n - k - 1) * (k + 1))};
  }
  if (m == 1) {
    if (n == k + 1) {
      throw Error(ErrorKind::kNoCaseApplies,
                  w.str() + " is the sharp configuration: every family is a P^1-bundle");
    }
    return {2, a > Rational(n - 1, n * (k + 1))};
  }
  if (n <= 1) {
    throw Error(ErrorKind::kNoCaseApplies, w.str() + " has fewer than two light sections");
  }
  if (n <= k) return {3, a > 0 && b > 0};
  const Rational lhs = Rational((k + 1) * (n - k - 1), n - 1) * a + Rational(k + 1, n) * b;
  return {4, lhs > 1 && b > 1};
}

std::pair<Rational, Rational> ab_substitution(int n, const Rational& c) {
  const Rational a = (n - 1) * (c - Rational(1, 2));
  const Rational b = n * (Rational(n - 1, 2) - (n - 2) * c);
  return {a, b};
}

bool Threshold::contains(const Rational& c) const {
  const bool above = lower_open ? c > lower : c >= lower;
  const bool below = upper_open ? c < upper : c <= upper;
  return above && below;
}

std::string Threshold::describe() const {
  if (is_point()) return to_string(lower);
  return std::string(lower_open ? "(" : "[") + to_string(lower) + ", " + to_string(upper) +
         (upper_open ? ")" : "]");
}

Threshold threshold_c(const WeightVector& w) {
  const int n = w.n();
  const int m = w.m();
  const int k = w.k();
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "the threshold cases assume k >= 2");
  Threshold t;
  auto point = [&t](int id, const Rational& c) {
    t.case_id = id;
    t.lower = c;
    t.upper = c;
  };
  if (m == 0) {
    point(1, Rational(n - 1, 2 * (n - 2)));
    t.a = t.lower;
    t.b = Rational(0);
  } else if (m == 1) {
    point(n == k + 1 ? 5 : 2, Rational(n + 1, 2 * n));
    t.equality = n == k + 1;
    t.a = t.lower - Rational(1, n);
    t.b = Rational(1);
  } else {
    t.lower = Rational(1, 2);
    t.lower_open = true;
    if (n >= k + 1) {
      t.case_id = 4;
      t.upper = Rational(n + 1, 2 * n);
      t.upper_open = true;
    } else {
      t.case_id = n >= 2 ? 3 : 6;
      t.upper = Rational(k + 2, 2 * (k + 1));
    }
  }
  return t;
}

C0 c0_lower(const WeightVector& w) {
  const Threshold t = threshold_c(w);
  C0 out;
  out.c0 = t.is_point() ? t.lower : (t.lower + t.upper) / 2;
  out.strict = out.c0 < Rational(w.k() + 2, 2 * (w.k() + 1));
  return out;
}

AmpleInterval ample_interval(int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be positive");
  if (k == 1) return {Rational(2, 3), std::nullopt};
  return {Rational(k + 2, 2 * k + 2), Rational(k + 1, 2 * k)};
}

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kStrictlyPositive: return "strictly_positive";
    case Verdict::kNonnegativeZeroCharacterized: return "nonnegative_zero_characterized";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::string trace_kind_name(TraceKind kind) {
  switch (kind) {
    case TraceKind::kMinDrop: return "min_drop";
    case TraceKind::kPullback: return "pullback";
    case TraceKind::kRecurse: return "recurse";
    case TraceKind::kAxiom: return "axiom";
  }
  return "?";
}

bool Certificate::invokes_min_drop_on(const WeightVector& w) const {
  return std::any_of(trace.begin(), trace.end(), [&w](const TraceEntry& e) {
    return e.kind == TraceKind::kMinDrop && e.weights == w;
  });
}

Certificate certify_generic(const WeightVector& w, const Rational& c) {
  const int n = w.n();
  const int m = w.m();
  Certificate cert(w, c);
  std::optional<std::pair<Rational, Rational>> ab;
  if (m >= 2) {
    ab = ab_substitution(n, c);
  } else if (m == 1) {
    if (w.collision_free() || c == Rational(n + 1, 2 * n)) ab.emplace(c - Rational(1, n), Rational(1));
  } else {
    if (w.collision_free() || c == Rational(n - 1, 2 * (n - 2))) ab.emplace(c, Rational(0));
  }
  cert.strata_checked = {w};
  if (!ab) {
    cert.note = "D_k(c) is not of the form covered by the drop functions on this space at this c";
    return cert;
  }
  cert.a = ab->first;
  cert.b = ab->second;
  cert.coeffs = CoefficientVector::from_ab(m, ab->first, ab->second);
  cert.trace.push_back({TraceKind::kMinDrop, w, c, ""});
  cert.witness = min_drop(w, cert.coeffs);
  if (!cert.witness) {
    cert.verdict = Verdict::kNonnegativeZeroCharacterized;
    cert.zero_strata = {w};
    cert.note = "no blow-down is admissible; every family with smooth generic fiber is a P^1-bundle "
                "and has degree 0";
    return cert;
  }
  cert.margin = cert.witness->value;
  if (cert.witness->value > 0) {
    cert.verdict = Verdict::kStrictlyPositive;
    cert.note = "every step drops G; families without singular fibers have degree 0";
  } else if (cert.witness->value == 0) {
    cert.verdict = Verdict::kNonnegativeZeroCharacterized;
    cert.zero_strata = {w};
    cert.note = "minimum drop is exactly 0";
  } else {
    cert.note = "a step raises G";
  }
  return cert;
}

std::vector<WeightVector> reachable_strata(const WeightVector& w) {
  const int k = w.k();
  std::set<std::pair<int, int>> seen{{w.n(), w.m()}};
  std::vector<std::pair<int, int>> frontier{{w.n(), w.m()}};
  while (!frontier.empty()) {
    const auto [n, m] = frontier.back();
    frontier.pop_back();
    const WeightVector here = make_weights(n, m, k);
    for (const auto& [n1, m1] : admissible_pairs(here)) {
      for (const auto& factor : {std::pair(n1, m1 + 1), std::pair(n - n1, m - m1 + 1)}) {
        if (seen.insert(factor).second) frontier.push_back(factor);
      }
    }
  }
  std::vector<WeightVector> out;
  for (const auto& [n, m] : seen) out.push_back(make_weights(n, m, k));
  return out;
}

namespace {

void append_trace(Certificate& into, const Certificate& from) {
  into.trace.insert(into.trace.end(), from.trace.begin(), from.trace.end());
}

bool passes(const Certificate& cert) {
  return cert.verdict == Verdict::kStrictlyPositive ||
         cert.verdict == Verdict::kNonnegativeZeroCharacterized;
}

// Memo for one certification run, keyed by (n, m, k, c).
class Certifier {
 public:
  Certificate interval(const WeightVector& w, const Rational& c) {
    const auto key = std::tuple(w.n(), w.m(), w.k(), to_string(c));
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    Certificate cert = w.k() == 1 ? classical(w, c)
                       : c == *ample_interval(w.k()).hi ? endpoint(w, c)
                                                          : convex(w, c);
    memo_.emplace(key, cert);
    return cert;
  }

 private:
  // k = 1: D_1(c) = c psi_sigma + psi_tau - Delta on the unweighted space.
  Certificate classical(const WeightVector& w, const Rational& c) {
    Certificate cert(w, c);
    const Rational capped = std::min(c, Rational(1));
    if (c > 1) {
      cert.trace.push_back({TraceKind::kAxiom, w, c, "D_1(c) = D_1(1) + (c - 1) psi_sigma with psi_sigma nef"});
    }
    bool ok = true;
    for (const WeightVector& s : reachable_strata(w)) {
      cert.strata_checked.push_back(s);
      if (s.dimension() == 0) {
        cert.trace.push_back({TraceKind::kAxiom, s, capped, "a point carries no curves"});
        continue;
      }
      WeightVector space = s;
      if (s.m() >= 1) {
        space = make_weights(s.n() + s.m() - 1, 1, 1);
        if (s.m() >= 2) {
          cert.trace.push_back({TraceKind::kAxiom, s, capped,
                                "treat m-1 heavy sections as light; the difference (1 - c) psi_tau is nef"});
        }
      }
      const Certificate gen = certify_generic(space, capped);
      append_trace(cert, gen);
      // Sections of a k = 1 family never meet, so a family without singular
      // fibers is constant; an empty step set leaves nothing to check.
      const bool fine = gen.verdict == Verdict::kStrictlyPositive ||
                        (gen.verdict == Verdict::kNonnegativeZeroCharacterized && !gen.witness);
      if (!fine) ok = false;
      if (s == w) {
        cert.a = gen.a;
        cert.b = gen.b;
        cert.coeffs = gen.coeffs;
        cert.witness_weights = space;
        cert.witness = gen.witness;
        cert.margin = gen.margin;
      }
    }
    if (ok) {
      cert.verdict = Verdict::kStrictlyPositive;
      cert.note = "every stratum has positive drops";
    } else {
      cert.note = "some stratum has a non-positive drop";
    }
    return cert;
  }

  // c = (k+1)/(2k): pull back to k-1, where c is the lower endpoint.
  Certificate endpoint(const WeightVector& w, const Rational& c) {
    Certificate cert(w, c);
    const WeightVector below = make_weights(w.n(), w.m(), w.k() - 1);
    cert.trace.push_back({TraceKind::kPullback, w, c, "phi^* D_k(c) = D_{k-1}(c) on " + below.str()});
    cert.trace.push_back({TraceKind::kRecurse, below, c, ""});
    const Certificate sub = interval(below, c);
    append_trace(cert, sub);
    cert.strata_checked = sub.strata_checked;
    cert.a = sub.a;
    cert.b = sub.b;
    cert.lambda0 = sub.lambda0;
    cert.coeffs = sub.coeffs;
    cert.witness_weights = sub.witness_weights;
    cert.witness = sub.witness;
    cert.margin = sub.margin;
    if (passes(sub)) {
      cert.verdict = Verdict::kStrictlyPositive;
      cert.note = "degree zero below only on curves contracted by phi";
    } else {
      cert.note = "the pulled-back class is not certified";
    }
    return cert;
  }

  // lo <= c < hi: D_k(c) = (1 - lambda0) D_k(hi) + lambda0 D_k(c0) on every stratum.
  Certificate convex(const WeightVector& w, const Rational& c) {
    const int k = w.k();
    const AmpleInterval iv = ample_interval(k);
    const Rational& hi = *iv.hi;
    Certificate cert(w, c);
    bool ok = true;
    for (const WeightVector& s : reachable_strata(w)) {
      cert.strata_checked.push_back(s);
      const C0 c0 = c0_lower(s);
      const Certificate gen = certify_generic(s, c0.c0);
      append_trace(cert, gen);
      if (!passes(gen)) ok = false;
      cert.trace.push_back({TraceKind::kRecurse, s, hi, ""});
      const Certificate top = interval(s, hi);
      append_trace(cert, top);
      if (top.verdict != Verdict::kStrictlyPositive) ok = false;
      if (c0.c0 == iv.lo) cert.zero_strata.push_back(s);
      if (s == w) {
        const Rational lambda0 = (hi - c) / (hi - c0.c0);
        cert.a = gen.a;
        cert.b = gen.b;
        cert.lambda0 = lambda0;
        cert.coeffs = gen.coeffs.scaled(lambda0);
        if (gen.witness) {
          cert.witness = DropEvaluation{gen.witness->r1, gen.witness->r2, lambda0 * gen.witness->value};
          cert.margin = cert.witness->value;
        }
      }
    }
    if (!ok) {
      cert.note = "some stratum is not certified";
      return cert;
    }
    if (c == iv.lo && !cert.zero_strata.empty()) {
      cert.verdict = Verdict::kNonnegativeZeroCharacterized;
      cert.note = "degree zero only on families whose moving components have the listed zero shapes";
    } else {
      cert.verdict = Verdict::kStrictlyPositive;
      cert.zero_strata.clear();
      cert.note = "convex combination of the upper endpoint and c0 on every stratum";
    }
    return cert;
  }

  std::map<std::tuple<int, int, int, std::string>, Certificate> memo_;
};

void require_in(const WeightVector& w, const Rational& c, bool include_lower) {
  const AmpleInterval iv = ample_interval(w.k());
  const bool above = include_lower && iv.hi ? c >= iv.lo : c > iv.lo;
  const bool below = !iv.hi || c <= *iv.hi;
  if (!above || !below) {
    throw Error(ErrorKind::kCOutOfInterval,
                "c = " + to_string(c) + " outside " + (include_lower && iv.hi ? "[" : "(") +
                    to_string(iv.lo) + ", " + (iv.hi ? to_string(*iv.hi) + "]" : "inf)") + " for k = " +
                    std::to_string(w.k()));
  }
}

}  // namespace

Certificate certify_interval(const WeightVector& w, const Rational& c) {
  require_in(w, c, true);
  Certifier certifier;
  return certifier.interval(w, c);
}

Certificate perturbed_certify(const WeightVector& w, const Rational& c,
                              const std::map<BoundaryKey, Rational>& eps) {
  require_in(w, c, false);
  std::map<BoundaryKey, Rational> shift;
  for (const auto& [key, value] : eps) {
    const BoundaryKey canonical = canonical_key(w, key.i, key.j);
    if (value != 0) shift[canonical] += value;
  }
  Certificate cert = certify_interval(w, c);
  if (std::all_of(shift.begin(), shift.end(), [](const auto& kv) { return kv.second == 0; })) return cert;
  if (w.k() == 1 || c == *ample_interval(w.k()).hi) {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "boundary perturbations are only mechanized for interior c with k >= 2";
    return cert;
  }
  std::optional<DropEvaluation> best;
  for (const auto& [r1, r2] : admissible_pairs(w)) {
    Rational value = drop_value(w, cert.coeffs, r1, r2);
    if (const auto it = shift.find(canonical_key(w, r1, r2)); it != shift.end()) value += it->second;
    DropEvaluation here{r1, r2, value};
    if (!best || better(here, *best)) best = std::move(here);
  }
  cert.trace.push_back({TraceKind::kMinDrop, w, c, "perturbed drops"});
  cert.witness = best;
  cert.margin = best ? std::optional<Rational>(best->value) : std::nullopt;
  if (cert.verdict == Verdict::kStrictlyPositive && (!best || best->value > 0)) {
    cert.note = "every perturbed drop stays positive";
  } else {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "a perturbed drop is not positive";
  }
  return cert;
}

namespace {

std::string optional_text(const std::optional<Rational>& value, const char* none) {
  return value ? to_string(*value) : std::string(none);
}

std::string weights_list(const std::vector<WeightVector>& list) {
  std::string out;
  for (const auto& w : list) {
    if (!out.empty()) out += ' ';
    out += w.str();
  }
  return out;
}

}  // namespace

std::string format_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << "verdict\t" << verdict_name(cert.verdict) << '\n';
  os << "weights\t" << cert.weights.str() << '\n';
  os << "c\t" << to_string(cert.c) << '\n';
  os << "a\t" << optional_text(cert.a, "-") << '\n';
  os << "b\t" << optional_text(cert.b, "-") << '\n';
  os << "lambda0\t" << optional_text(cert.lambda0, "-") << '\n';
  os << "coeffs\t" << to_string(cert.coeffs.a_sigma) << ' ' << to_string(cert.coeffs.a_tau) << ' '
     << to_string(cert.coeffs.a_sigma_tau) << ' ' << to_string(cert.coeffs.a_delta) << '\n';
  if (cert.witness) {
    os << "witness\t" << cert.witness_weights.str() << " (" << cert.witness->r1 << ',' << cert.witness->r2
       << ") " << to_string(cert.witness->value) << '\n';
  } else {
    os << "witness\t-\n";
  }
  os << "margin\t" << (cert.witness || cert.verdict == Verdict::kInconclusive ? optional_text(cert.margin, "-")
                                                                              : std::string("inf"))
     << '\n';
  os << "strata\t" << weights_list(cert.strata_checked) << '\n';
  os << "zero_strata\t" << weights_list(cert.zero_strata) << '\n';
  for (const auto& e : cert.trace) {
    os << "trace\t" << trace_kind_name(e.kind) << '\t' << e.weights.str() << '\t' << to_string(e.c);
    if (!e.note.empty()) os << '\t' << e.note;
    os << '\n';
  }
  os << "note\t" << cert.note << '\n';
  return os.str();
}

std::string format_certificate_json(const Certificate& cert) {
  using nlohmann::ordered_json;
  auto weights_json = [](const WeightVector& w) { return ordered_json::array({w.n(), w.m(), w.k()}); };
  auto optional_json = [](const std::optional<Rational>& v) {
    return v ? ordered_json(to_string(*v)) : ordered_json(nullptr);
  };
  ordered_json doc;
  doc["verdict"] = verdict_name(cert.verdict);
  doc["weights"] = weights_json(cert.weights);
  doc["c"] = to_string(cert.c);
  doc["a"] = optional_json(cert.a);
  doc["b"] = optional_json(cert.b);
  doc["lambda0"] = optional_json(cert.lambda0);
  doc["coeffs"] = {{"a_sigma", to_string(cert.coeffs.a_sigma)},
                   {"a_tau", to_string(cert.coeffs.a_tau)},
                   {"a_sigma_tau", to_string(cert.coeffs.a_sigma_tau)},
                   {"a_delta", to_string(cert.coeffs.a_delta)}};
  doc["witness_weights"] = weights_json(cert.witness_weights);
  if (cert.witness) {
    doc["witness"] = {{"r1", cert.witness->r1}, {"r2", cert.witness->r2}, {"value", to_string(cert.witness->value)}};
  } else {
    doc["witness"] = nullptr;
  }
  if (cert.margin) {
    doc["margin"] = to_string(*cert.margin);
  } else {
    doc["margin"] = cert.verdict == Verdict::kInconclusive ? ordered_json(nullptr) : ordered_json("inf");
  }
  doc["strata_checked"] = ordered_json::array();
  for (const auto& s : cert.strata_checked) doc["strata_checked"].push_back(weights_json(s));
  doc["zero_strata"] = ordered_json::array();
  for (const auto& s : cert.zero_strata) doc["zero_strata"].push_back(weights_json(s));
  doc["trace"] = ordered_json::array();
  for (const auto& e : cert.trace) {
    doc["trace"].push_back({{"kind", trace_kind_name(e.kind)},
                            {"weights", weights_json(e.weights)},
                            {"c", to_string(e.c)},
                            {"note", e.note}});
  }
  doc["note"] = cert.note;
  return doc.dump(2) + "\n";
}

namespace {

ThresholdRow threshold_row(const WeightVector& w) {
  ThresholdRow row;
  row.n = w.n();
  row.m = w.m();
  row.threshold = threshold_c(w);
  row.c0 = c0_lower(w);
  const Certificate gen = certify_generic(w, row.c0.c0);
  row.generic_verdict = gen.verdict;
  row.generic_min = gen.witness;
  return row;
}

std::vector<WeightVector> table_grid(int k, int nmax, int mmax) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "threshold table needs k >= 2");
  std::vector<WeightVector> grid;
  for (int n = 0; n <= nmax; ++n) {
    for (int m = 0; m <= mmax; ++m) {
      if (weights_valid(n, m, k)) grid.push_back(make_weights(n, m, k));
    }
  }
  return grid;
}

}  // namespace

std::vector<ThresholdRow> threshold_table_serial(int k, int nmax, int mmax) {
  std::vector<ThresholdRow> rows;
  for (const auto& w : table_grid(k, nmax, mmax)) rows.push_back(threshold_row(w));
  return rows;
}

std::vector<ThresholdRow> threshold_table(int k, int nmax, int mmax) {
  const auto grid = table_grid(k, nmax, mmax);
  std::vector<ThresholdRow> rows(grid.size());
  const long long count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    rows[static_cast<std::size_t>(i)] = threshold_row(grid[static_cast<std::size_t>(i)]);
  }
  return rows;
}

}  // namespace m0a
