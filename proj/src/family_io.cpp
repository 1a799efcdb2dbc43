#include "m0a/family_io.hpp"

#include "m0a/error.hpp"

#include <json.hpp>

namespace m0a {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::kParse, path + ": " + message);
}

const json& field(const json& object, const std::string& name, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  const auto it = object.find(name);
  if (it == object.end()) fail(path.empty() ? name : path + "." + name, "missing");
  return *it;
}

long long integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  return value.get<long long>();
}

template <typename T>
std::vector<T> integer_list(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected a list of integers");
  std::vector<T> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(static_cast<T>(integer(value[i], path + "[" + std::to_string(i) + "]")));
  }
  return out;
}

}  // namespace

FamilyModel parse_family(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail("<file>", e.what());
  }
  const int n = static_cast<int>(integer(field(doc, "n", ""), "n"));
  const int m = static_cast<int>(integer(field(doc, "m", ""), "m"));
  const int k = static_cast<int>(integer(field(doc, "k", ""), "k"));
  FamilyModel family{make_weights(n, m, k), FamilyMode::kAbstract, {}, {}, {}};

  const json& mode = field(doc, "mode", "");
  if (mode == "concrete") {
    family.mode = FamilyMode::kConcrete;
  } else if (mode != "abstract") {
    fail("mode", "expected \"concrete\" or \"abstract\"");
  }

  const json& steps = field(doc, "steps", "");
  if (!steps.is_array()) fail("steps", "expected a list");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string path = "steps[" + std::to_string(i) + "]";
    const json& step = steps[i];
    if (family.concrete()) {
      auto sigma = integer_list<int>(field(step, "sigma", path), path + ".sigma");
      auto tau = step.contains("tau") ? integer_list<int>(step.at("tau"), path + ".tau") : std::vector<int>{};
      family.steps.push_back(BlowdownStep::sections(std::move(sigma), std::move(tau)));
    } else {
      const int r1 = static_cast<int>(integer(field(step, "r1", path), path + ".r1"));
      const int r2 = static_cast<int>(integer(field(step, "r2", path), path + ".r2"));
      family.steps.push_back(BlowdownStep::counts(r1, r2));
    }
  }

  if (family.concrete()) {
    family.final_e_sigma = integer_list<long long>(field(doc, "final_e_sigma", ""), "final_e_sigma");
    family.final_e_tau = doc.contains("final_e_tau")
                             ? integer_list<long long>(doc.at("final_e_tau"), "final_e_tau")
                             : std::vector<long long>{};
  }
  return family;
}

std::string format_family(const FamilyModel& family) {
  nlohmann::ordered_json doc;
  doc["n"] = family.weights.n();
  doc["m"] = family.weights.m();
  doc["k"] = family.weights.k();
  doc["mode"] = family.concrete() ? "concrete" : "abstract";
  doc["steps"] = nlohmann::ordered_json::array();
  for (const auto& step : family.steps) {
    if (family.concrete()) {
      doc["steps"].push_back({{"sigma", step.sigma}, {"tau", step.tau}});
    } else {
      doc["steps"].push_back({{"r1", step.r1}, {"r2", step.r2}});
    }
  }
  if (family.concrete()) {
    doc["final_e_sigma"] = family.final_e_sigma;
    doc["final_e_tau"] = family.final_e_tau;
  }
  return doc.dump(2) + "\n";
}

}  // namespace m0a
