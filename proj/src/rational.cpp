#include "m0a/rational.hpp"

#include "m0a/error.hpp"

#include <cctype>

namespace m0a {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidWeights: return "InvalidWeights";
    case ErrorKind::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kAmbientMismatch: return "AmbientMismatch";
    case ErrorKind::kEmptyCombination: return "EmptyCombination";
    case ErrorKind::kUnsupportedCoefficient: return "UnsupportedCoefficient";
    case ErrorKind::kInvalidMorphism: return "InvalidMorphism";
    case ErrorKind::kConcreteOnly: return "ConcreteOnly";
    case ErrorKind::kConcreteAbstractMismatch: return "ConcreteAbstractMismatch";
    case ErrorKind::kUnequalTauCoefficients: return "UnequalTauCoefficients";
    case ErrorKind::kInvalidCoefficients: return "InvalidCoefficients";
    case ErrorKind::kShapeNotFunctorial: return "ShapeNotFunctorial";
    case ErrorKind::kNoCaseApplies: return "NoCaseApplies";
    case ErrorKind::kCOutOfInterval: return "COutOfInterval";
    case ErrorKind::kInvalidFamily: return "InvalidFamily";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Rational& value) {
  // cpp_rational keeps values normalized with a positive denominator.
  return value.str();
}

namespace {

bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  out = Integer(std::string(text[0] == '+' ? text.substr(1) : text));
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view body = trim(text);
  const auto slash = body.find('/');
  Integer num;
  Integer den(1);
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(body, num)
                      : parse_integer(body.substr(0, slash), num) &&
                            parse_integer(body.substr(slash + 1), den);
  if (!ok) throw Error(ErrorKind::kParse, "malformed rational '" + std::string(text) + "'");
  if (den == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace m0a
