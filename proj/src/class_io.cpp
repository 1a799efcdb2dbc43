#include "m0a/class_io.hpp"

#include "m0a/error.hpp"

#include <json.hpp>

#include <optional>
#include <regex>
#include <sstream>

namespace m0a {

std::string format_class(const DivisorClass& cls) {
  std::ostringstream out;
  const WeightVector& w = cls.ambient;
  out << "n=" << w.n() << "\nm=" << w.m() << "\nk=" << w.k() << "\n";
  out << "psi_sigma=" << to_string(cls.psi_sigma) << "\n";
  for (std::size_t j = 0; j < cls.psi_tau.size(); ++j) {
    out << "psi_tau[" << j + 1 << "]=" << to_string(cls.psi_tau[j]) << "\n";
  }
  out << "delta_s=" << to_string(cls.delta_s) << "\n";
  out << "delta=" << to_string(cls.delta) << "\n";
  for (const auto& [key, value] : cls.boundary) {
    out << "boundary[" << key.i << "," << key.j << "]=" << to_string(value) << "\n";
  }
  return out.str();
}

std::string format_class_json(const DivisorClass& cls) {
  nlohmann::ordered_json doc;
  doc["n"] = cls.ambient.n();
  doc["m"] = cls.ambient.m();
  doc["k"] = cls.ambient.k();
  doc["psi_sigma"] = to_string(cls.psi_sigma);
  doc["psi_tau"] = nlohmann::ordered_json::array();
  for (const auto& value : cls.psi_tau) doc["psi_tau"].push_back(to_string(value));
  doc["delta_s"] = to_string(cls.delta_s);
  doc["delta"] = to_string(cls.delta);
  doc["boundary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : cls.boundary) {
    doc["boundary"][std::to_string(key.i) + "," + std::to_string(key.j)] = to_string(value);
  }
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void parse_fail(const std::string& message) { throw Error(ErrorKind::kParse, message); }

int parse_int(const std::string& text) {
  const Rational value = parse_rational(text);
  if (denominator(value) != 1) parse_fail("expected an integer, got '" + text + "'");
  return numerator(value).convert_to<int>();
}

DivisorClass parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
  try {
    DivisorClass cls(make_weights(doc.at("n").get<int>(), doc.at("m").get<int>(),
                                  doc.at("k").get<int>()));
    cls.psi_sigma = parse_rational(doc.at("psi_sigma").get<std::string>());
    const auto& tau = doc.at("psi_tau");
    if (tau.size() != cls.psi_tau.size()) parse_fail("psi_tau must have m entries");
    for (std::size_t j = 0; j < tau.size(); ++j) cls.psi_tau[j] = parse_rational(tau[j].get<std::string>());
    cls.delta_s = parse_rational(doc.at("delta_s").get<std::string>());
    cls.delta = parse_rational(doc.at("delta").get<std::string>());
    if (doc.contains("boundary")) {
      static const std::regex kKey(R"((\d+),(\d+))");
      for (const auto& [name, value] : doc.at("boundary").items()) {
        std::smatch match;
        if (!std::regex_match(name, match, kKey)) parse_fail("bad boundary key '" + name + "'");
        cls.add_boundary(std::stoi(match[1]), std::stoi(match[2]),
                         parse_rational(value.get<std::string>()));
      }
    }
    return cls;
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
}

}  // namespace

DivisorClass parse_class(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);

  static const std::regex kLine(R"(^\s*([a-z_]+)(?:\[(\d+)(?:,(\d+))?\])?\s*=\s*(\S+)\s*$)");
  std::optional<int> n, m, k;
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') {
      continue;
    }
    lines.push_back(line);
  }
  struct Entry {
    std::string name;
    std::string index1;
    std::string index2;
    std::string value;
  };
  std::vector<Entry> body;
  for (const auto& line : lines) {
    std::smatch match;
    if (!std::regex_match(line, match, kLine)) parse_fail("unrecognized line '" + line + "'");
    Entry e{match[1], match[2], match[3], match[4]};
    if (e.name == "n") {
      n = parse_int(e.value);
    } else if (e.name == "m") {
      m = parse_int(e.value);
    } else if (e.name == "k") {
      k = parse_int(e.value);
    } else {
      body.push_back(std::move(e));
    }
  }
  if (!n || !m || !k) parse_fail("class record needs n, m and k");
  DivisorClass cls(make_weights(*n, *m, *k));
  for (const auto& e : body) {
    const Rational value = parse_rational(e.value);
    if (e.name == "psi_sigma" && e.index1.empty()) {
      cls.psi_sigma = value;
    } else if (e.name == "delta_s" && e.index1.empty()) {
      cls.delta_s = value;
    } else if (e.name == "delta" && e.index1.empty()) {
      cls.delta = value;
    } else if (e.name == "psi_tau" && !e.index1.empty() && e.index2.empty()) {
      const int j = std::stoi(e.index1);
      if (j < 1 || j > *m) parse_fail("psi_tau index " + e.index1 + " out of range");
      cls.psi_tau[static_cast<std::size_t>(j - 1)] = value;
    } else if (e.name == "boundary" && !e.index2.empty()) {
      cls.add_boundary(std::stoi(e.index1), std::stoi(e.index2), value);
    } else {
      parse_fail("unknown key '" + e.name + "'");
    }
  }
  return cls;
}

}  // namespace m0a
