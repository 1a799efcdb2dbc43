#include "m0a/cli.hpp"

#include "m0a/class_io.hpp"
#include "m0a/error.hpp"
#include "m0a/family.hpp"
#include "m0a/family_io.hpp"
#include "m0a/morphisms.hpp"
#include "m0a/positivity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

namespace m0a {

namespace {

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  return read_stream(file);
}

struct WeightFlags {
  int n = -1;
  int m = 0;
  int k = -1;
  CLI::Option* n_opt = nullptr;
  CLI::Option* k_opt = nullptr;

  void attach(CLI::App* app, bool required = true) {
    n_opt = app->add_option("--n", n, "light sections (weight 1/k)");
    app->add_option("--m", m, "heavy sections (weight 1)")->capture_default_str();
    k_opt = app->add_option("--k", k, "weight denominator");
    if (required) {
      n_opt->required();
      k_opt->required();
    }
  }

  bool given() const { return n_opt->count() > 0 || k_opt->count() > 0; }

  WeightVector weights() const { return make_weights(n, m, k); }
};

// ---------------------------------------------------------------- class

struct ClassCommand {
  std::string kind;
  WeightFlags flags;
  std::string c;
  std::string alpha;
  bool dk = false;
  std::string in_path;
  bool json = false;
};

void emit_class(const DivisorClass& cls, bool json, std::ostream& out) {
  out << (json ? format_class_json(cls) : format_class(cls));
}

// Without --n/--k the ambient space is taken from the record itself, so the
// output of one class command can be piped into the next.
DivisorClass input_class(const ClassCommand& cmd, std::istream& in, const std::optional<WeightVector>& ambient) {
  if (cmd.dk) {
    if (cmd.c.empty()) throw Error(ErrorKind::kInvalidArgument, "--dk needs --c");
    if (!ambient) throw Error(ErrorKind::kInvalidArgument, "--dk needs --n and --k");
    return dk_class(*ambient, parse_rational(cmd.c));
  }
  const DivisorClass cls = parse_class(cmd.in_path.empty() ? read_stream(in) : read_file(cmd.in_path));
  if (ambient && cls.ambient != *ambient) {
    throw Error(ErrorKind::kAmbientMismatch, "input class lives on " + cls.ambient.str() + ", expected " +
                                                 ambient->str());
  }
  return cls;
}

int run_class(const ClassCommand& cmd, std::istream& in, std::ostream& out) {
  if (cmd.kind == "logcanonical") {
    if (cmd.alpha.empty()) throw Error(ErrorKind::kInvalidArgument, "logcanonical needs --alpha");
    if (cmd.flags.n < 0) throw Error(ErrorKind::kInvalidArgument, "logcanonical needs --n");
    const LogCanonical lc = log_canonical_class(cmd.flags.n, parse_rational(cmd.alpha));
    if (cmd.json) {
      nlohmann::ordered_json doc;
      doc["class"] = nlohmann::ordered_json::parse(format_class_json(lc.cls));
      doc["c"] = to_string(lc.c);
      doc["normalized"] = nlohmann::ordered_json::parse(format_class_json(lc.normalized));
      out << doc.dump(2) << '\n';
    } else {
      out << format_class(lc.cls);
      out << "# c=" << to_string(lc.c) << '\n';
      std::istringstream normalized(format_class(lc.normalized));
      for (std::string line; std::getline(normalized, line);) out << "# normalized " << line << '\n';
    }
    return kExitOk;
  }

  if (cmd.kind == "pull-reduction" || cmd.kind == "pull-replacement") {
    std::optional<WeightVector> target;
    if (cmd.flags.given()) target = cmd.flags.weights();
    const DivisorClass cls = input_class(cmd, in, target);
    emit_class(cmd.kind == "pull-reduction" ? pullback_reduction(cls) : pullback_replacement(cls), cmd.json, out);
    return kExitOk;
  }

  if (cmd.flags.n < 0) throw Error(ErrorKind::kInvalidArgument, cmd.kind + " needs --n");
  if (cmd.flags.k < 1) throw Error(ErrorKind::kInvalidArgument, cmd.kind + " needs --k");
  const WeightVector target = cmd.flags.weights();
  if (cmd.kind == "dk") {
    if (cmd.c.empty()) throw Error(ErrorKind::kInvalidArgument, "dk needs --c");
    emit_class(dk_class(target, parse_rational(cmd.c)), cmd.json, out);
  } else if (cmd.kind == "push") {
    const WeightVector source = make_morphism(MorphismKind::kReductionFromUnweighted, target).source;
    DivisorClass cls(source);
    if (!cmd.alpha.empty()) {
      cls = log_canonical_class(source.n(), parse_rational(cmd.alpha)).cls;
    } else if (cmd.dk) {
      if (cmd.c.empty()) throw Error(ErrorKind::kInvalidArgument, "--dk needs --c");
      cls.psi_sigma = parse_rational(cmd.c);
      cls.delta = -1;
    } else {
      cls = input_class(cmd, in, source);
    }
    emit_class(pushforward_reduction(cls, target), cmd.json, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- family

struct FamilyCommand {
  std::string action;
  std::string path;
  bool dk = false;
  std::string c;
  std::string class_file;
  std::string a = "0";
  std::string b = "0";
  bool json = false;
};

int run_family(const FamilyCommand& cmd, std::ostream& out, std::ostream& err) {
  const FamilyModel family = parse_family(read_file(cmd.path));
  const auto violations = validate_family(family);
  if (!violations.empty()) {
    for (const auto& v : violations) err << v.path << ": " << v.message << '\n';
    return kExitError;
  }
  if (cmd.action == "validate") {
    out << "valid\t" << family.weights.str() << "\tN=" << family.length() << '\n';
  } else if (cmd.action == "intersect") {
    const IntersectionReport r = intersection_numbers(family);
    if (cmd.json) {
      nlohmann::ordered_json doc;
      doc["psi_sigma_B"] = to_string(r.psi_sigma_B);
      doc["psi_tau_B"] = to_string(r.psi_tau_B);
      doc["delta_s_B"] = to_string(r.delta_s_B);
      doc["delta_B"] = to_string(r.delta_B);
      doc["boundary"] = nlohmann::ordered_json::object();
      for (const auto& [key, count] : r.boundary_counts) {
        doc["boundary"][std::to_string(key.i) + "," + std::to_string(key.j)] = count;
      }
      out << doc.dump(2) << '\n';
    } else {
      out << "psi_sigma_B\t" << to_string(r.psi_sigma_B) << '\n';
      out << "psi_tau_B\t" << to_string(r.psi_tau_B) << '\n';
      out << "delta_s_B\t" << to_string(r.delta_s_B) << '\n';
      out << "delta_B\t" << to_string(r.delta_B) << '\n';
      for (const auto& [key, count] : r.boundary_counts) {
        out << "boundary[" << key.i << ',' << key.j << "]\t" << count << '\n';
      }
    }
  } else if (cmd.action == "eval") {
    DivisorClass cls(family.weights);
    if (cmd.dk) {
      if (cmd.c.empty()) throw Error(ErrorKind::kInvalidArgument, "--dk needs --c");
      cls = dk_class(family.weights, parse_rational(cmd.c));
    } else if (!cmd.class_file.empty()) {
      cls = parse_class(read_file(cmd.class_file));
    } else {
      throw Error(ErrorKind::kInvalidArgument, "eval needs --dk --c or --class-file");
    }
    out << to_string(evaluate_class(cls, family)) << '\n';
  } else if (cmd.action == "fvalues") {
    out << "level\tF_delta\tF_sigma\tF_tau\tF_sigma_tau\n";
    for (int i = 0; i <= family.length(); ++i) {
      const FValues f = f_values(family, i);
      out << i << '\t' << to_string(f.f_delta) << '\t' << to_string(f.f_sigma) << '\t' << to_string(f.f_tau)
          << '\t' << to_string(f.f_sigma_tau) << '\n';
    }
  } else {
    const Rational b = parse_rational(cmd.b);
    if (family.weights.m() == 0 && b != 0) {
      throw Error(ErrorKind::kInvalidCoefficients, "b must be 0 when there are no weight-1 sections");
    }
    const auto g = g_series(family, CoefficientVector::from_ab(family.weights.m(), parse_rational(cmd.a), b));
    out << "level\tG\n";
    for (std::size_t i = 0; i < g.size(); ++i) out << i << '\t' << to_string(g[i]) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- certify

struct CertifyCommand {
  WeightFlags flags;
  std::string c;
  std::vector<std::string> eps;
  bool generic_only = false;
  bool json = false;
};

std::map<BoundaryKey, Rational> parse_eps(const std::vector<std::string>& entries) {
  static const std::regex kEntry(R"(^\s*(\d+)\s*,\s*(\d+)\s*=\s*(\S+)\s*$)");
  std::map<BoundaryKey, Rational> eps;
  for (const auto& entry : entries) {
    std::smatch match;
    if (!std::regex_match(entry, match, kEntry)) {
      throw Error(ErrorKind::kParse, "--eps expects i,j=p/q, got '" + entry + "'");
    }
    eps[BoundaryKey{std::stoi(match[1]), std::stoi(match[2])}] += parse_rational(match[3].str());
  }
  return eps;
}

int run_certify(const CertifyCommand& cmd, std::ostream& out) {
  const WeightVector w = cmd.flags.weights();
  const Rational c = parse_rational(cmd.c);
  const auto eps = parse_eps(cmd.eps);
  Certificate cert = cmd.generic_only ? certify_generic(w, c)
                     : eps.empty()    ? certify_interval(w, c)
                                      : perturbed_certify(w, c, eps);
  out << (cmd.json ? format_certificate_json(cert) : format_certificate(cert));
  return cert.verdict == Verdict::kStrictlyPositive ? kExitOk : kExitNotCertified;
}

// ---------------------------------------------------------------- thresholds

struct ThresholdsCommand {
  int k = 2;
  int nmax = 10;
  int mmax = 3;
};

int run_thresholds(const ThresholdsCommand& cmd, std::ostream& out) {
  const AmpleInterval iv = ample_interval(cmd.k);
  out << "# ample\t(" << to_string(iv.lo) << ", " << (iv.hi ? to_string(*iv.hi) + "]" : "inf)") << '\n';
  if (cmd.k == 1) return kExitOk;
  out << "n\tm\tcase\tc\tc0\tstrict\tgeneric_at_c0\tmin_drop\n";
  for (const auto& row : threshold_table(cmd.k, cmd.nmax, cmd.mmax)) {
    out << row.n << '\t' << row.m << '\t' << row.threshold.case_id << '\t' << row.threshold.describe()
        << (row.threshold.equality ? " (equality)" : "") << '\t' << to_string(row.c0.c0) << '\t'
        << (row.c0.strict ? "strict" : "not_strict") << '\t' << verdict_name(row.generic_verdict) << '\t'
        << (row.generic_min ? "(" + std::to_string(row.generic_min->r1) + "," +
                                  std::to_string(row.generic_min->r2) + ") " + to_string(row.generic_min->value)
                            : std::string("none"))
        << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- fixtures

class FixtureReport {
 public:
  explicit FixtureReport(std::ostream& out) : out_(out) {}

  void check(const std::string& location, const std::string& name, const std::string& expected,
             const std::function<std::string()>& compute) {
    std::string computed;
    try {
      computed = compute();
    } catch (const std::exception& e) {
      computed = std::string("error: ") + e.what();
    }
    const bool pass = computed == expected;
    failures_ += pass ? 0 : 1;
    out_ << (pass ? "PASS" : "FAIL") << '\t' << location << '\t' << name << "\texpected=" << expected
         << "\tcomputed=" << computed << '\n';
  }

  void note(const std::string& location, const std::string& text) {
    out_ << "NOTE\t" << location << '\t' << text << '\n';
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

int run_fixtures(std::ostream& out) {
  FixtureReport report(out);
  const std::string push_lemma = "push-forward lemma, diagonal test curve";
  for (int n = 5; n <= 8; ++n) {
    report.check(push_lemma, "(a,b) for n=" + std::to_string(n), "(2,1)", [n] {
      const auto d = derive_pushforward_constants(n);
      return "(" + to_string(d.a) + "," + to_string(d.b) + ")";
    });
    report.check(push_lemma, "Delta.B^s for n=" + std::to_string(n), std::to_string(n - 1),
                 [n] { return to_string(derive_pushforward_constants(n).blown_up.delta_B); });
  }
  {
    const auto d = derive_pushforward_constants(5);
    report.note(push_lemma, "listed psi.B=" + d.listed_diagonal_psi + ", recomputed " + to_string(d.diagonal.psi_B) +
                                "; listed psi.B^s=" + d.listed_blown_up_psi + ", recomputed 2n-4=" +
                                to_string(d.blown_up.psi_B) + " at n=5");
  }

  const std::string log_lemma = "push-forward of K + alpha Delta";
  for (const Rational& alpha : {Rational(0), Rational(1, 2), Rational(1)}) {
    report.check(log_lemma, "alpha=" + to_string(alpha), "match", [alpha] {
      const WeightVector target = make_weights(6, 0, 2);
      const LogCanonical lc = log_canonical_class(6, alpha);
      const DivisorClass pushed = lc.c * pushforward_reduction(lc.cls, target);
      DivisorClass expected(target);
      expected.psi_sigma = lc.c;
      expected.delta_s = 2 * lc.c - 1;
      expected.delta = -1;
      return pushed == expected ? std::string("match") : format_class(pushed);
    });
  }

  const std::string pull_lemma = "pull-back lemma for phi, contracted test curve";
  for (int k = 2; k <= 6; ++k) {
    report.check(pull_lemma, "psi_sigma constant for k=" + std::to_string(k), std::to_string(-k),
                 [k] { return to_string(derive_pullback_constant(2 * k + 1, 0, k).psi_sigma_constant); });
    report.check(pull_lemma, "Delta_s and Delta constants for k=" + std::to_string(k),
                 to_string(binomial2(k)) + ",-1", [k] {
                   const auto d = derive_pullback_constant(2 * k + 1, 0, k);
                   return to_string(d.delta_s_constant) + "," + to_string(d.delta_constant);
                 });
  }

  const std::string main_thm = "main theorem, upper endpoint";
  for (int k = 2; k <= 10; ++k) {
    report.check(main_thm, "phi^* D_k((k+1)/(2k)) = D_{k-1} for k=" + std::to_string(k), "F=0, equal", [k] {
      const Rational c(k + 1, 2 * k);
      const WeightVector target = make_weights(2 * k + 1, 0, k);
      const DivisorClass pulled = pullback_reduction(dk_class(target, c));
      const bool equal = pulled == dk_class(make_weights(2 * k + 1, 0, k - 1), c);
      return "F=" + to_string(pulled.boundary_coefficient(canonical_key(pulled.ambient, k, 0))) + ", " +
             (equal ? "equal" : "differ");
    });
  }

  const std::string endpoint = "endpoint ampleness, replacement pull-back";
  for (int k = 2; k <= 10; ++k) {
    const Rational eps(1, 100);
    report.check(endpoint, "psi_tau_{m+1} for k=" + std::to_string(k) + ", eps=1/100",
                 to_string(1 - eps * k * (k - 2)), [k, eps] {
                   const WeightVector target = make_weights(k + 1, 1, k);
                   const DivisorClass pulled = pullback_replacement(dk_class(target, Rational(k + 1, 2 * k) + eps));
                   return to_string(pulled.psi_tau.back());
                 });
  }

  const std::string stratum = "pull-back lemma test curve as a stratum";
  for (int k = 2; k <= 10; ++k) {
    report.check(stratum, "D_{k-1}((k+1)/(2k)) for k=" + std::to_string(k), "0", [k] {
      const FamilyModel part = pullback_test_stratum(k);
      return to_string(stratified_evaluate(dk_class(part.weights, Rational(k + 1, 2 * k)), {part}));
    });
  }

  const std::string corollary = "threshold corollary";
  report.check(corollary, "c(7,0,2)", "case 1, 3/5",
               [] { return "case 1, " + threshold_c(make_weights(7, 0, 2)).describe(); });
  report.check(corollary, "c(5,1,3)", "case 2, 3/5",
               [] { return "case 2, " + threshold_c(make_weights(5, 1, 3)).describe(); });
  report.check(corollary, "c(4,1,3)", "case 5, 5/8, equality", [] {
    const Threshold t = threshold_c(make_weights(4, 1, 3));
    return "case " + std::to_string(t.case_id) + ", " + t.describe() + (t.equality ? ", equality" : "");
  });

  const std::string k1 = "classical case k=1";
  report.check(k1, "(5,0,1) at c=3/4", "strictly_positive",
               [] { return verdict_name(certify_interval(make_weights(5, 0, 1), Rational(3, 4)).verdict); });

  out << (report.failures() == 0 ? "all fixtures passed" : std::to_string(report.failures()) + " fixture(s) failed")
      << '\n';
  return report.failures() == 0 ? kExitOk : kExitNotCertified;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact divisor-class calculus and positivity certificates for weighted pointed rational curves",
               "m0a"};
  app.require_subcommand(1);

  ClassCommand class_cmd;
  CLI::App* class_app = app.add_subcommand("class", "build, push forward or pull back a divisor class");
  class_app->add_option("kind", class_cmd.kind, "dk | logcanonical | push | pull-reduction | pull-replacement")
      ->required()
      ->check(CLI::IsMember({"dk", "logcanonical", "push", "pull-reduction", "pull-replacement"}));
  class_cmd.flags.attach(class_app, false);
  class_app->add_option("--c", class_cmd.c, "rational c");
  class_app->add_option("--alpha", class_cmd.alpha, "rational alpha in [0,1]");
  class_app->add_flag("--dk", class_cmd.dk, "use D_k(c) as the input class");
  class_app->add_option("--in", class_cmd.in_path, "read the input class from a file instead of stdin");
  class_app->add_flag("--json", class_cmd.json, "JSON output");

  FamilyCommand family_cmd;
  CLI::App* family_app = app.add_subcommand("family", "validate and evaluate a family file");
  family_app->add_option("action", family_cmd.action, "validate | eval | fvalues | gseries | intersect")
      ->required()
      ->check(CLI::IsMember({"validate", "eval", "fvalues", "gseries", "intersect"}));
  family_app->add_option("file", family_cmd.path, "family file (JSON)")->required();
  family_app->add_flag("--dk", family_cmd.dk, "evaluate D_k(c)");
  family_app->add_option("--c", family_cmd.c, "rational c for --dk");
  family_app->add_option("--class-file", family_cmd.class_file, "class record to evaluate");
  family_app->add_option("--a", family_cmd.a, "a for gseries")->capture_default_str();
  family_app->add_option("--b", family_cmd.b, "b for gseries")->capture_default_str();
  family_app->add_flag("--json", family_cmd.json, "JSON output (intersect)");

  CertifyCommand certify_cmd;
  CLI::App* certify_app = app.add_subcommand("certify", "certify positivity of D_k(c)");
  certify_cmd.flags.attach(certify_app);
  certify_app->add_option("--c", certify_cmd.c, "rational c")->required();
  certify_app->add_option("--eps", certify_cmd.eps, "boundary perturbation i,j=p/q (repeatable)");
  certify_app->add_flag("--generic-only", certify_cmd.generic_only, "only the smooth-generic-fiber drop check");
  certify_app->add_flag("--json", certify_cmd.json, "JSON output");

  ThresholdsCommand thresholds_cmd;
  CLI::App* thresholds_app = app.add_subcommand("thresholds", "threshold table and ample interval");
  thresholds_app->add_option("--k", thresholds_cmd.k)->required();
  thresholds_app->add_option("--nmax", thresholds_cmd.nmax)->capture_default_str();
  thresholds_app->add_option("--mmax", thresholds_cmd.mmax)->capture_default_str();

  CLI::App* fixtures_app = app.add_subcommand("fixtures", "recompute the worked examples and test curves");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (class_app->parsed()) return run_class(class_cmd, in, out);
    if (family_app->parsed()) return run_family(family_cmd, out, err);
    if (certify_app->parsed()) return run_certify(certify_cmd, out);
    if (thresholds_app->parsed()) return run_thresholds(thresholds_cmd, out);
    if (fixtures_app->parsed()) return run_fixtures(out);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace m0a
