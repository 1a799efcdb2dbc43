#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace m0a {

enum class ErrorKind {
  kInvalidWeights,
  kAlphaOutOfRange,
  kDivisionByZero,
  kAmbientMismatch,
  kEmptyCombination,
  kUnsupportedCoefficient,
  kInvalidMorphism,
  kConcreteOnly,
  kConcreteAbstractMismatch,
  kUnequalTauCoefficients,
  kInvalidCoefficients,
  kShapeNotFunctorial,
  kNoCaseApplies,
  kCOutOfInterval,
  kInvalidFamily,
  kInvalidArgument,
  kParse,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace m0a
