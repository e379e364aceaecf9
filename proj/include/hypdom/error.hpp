#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypdom {

enum class ErrorCode {
  NonInvertible,
  BoundaryPoint,
  NoBisector,
  Unitary,
  NoIsometricSphere,
  PlaneBisector,
  Disjoint,
  Fixes,
  CenterDegenerate,
  NotDFShape,
  BadShape,
  Equal,
  CenterFixedByGenerator,
  MissingPeripheral,
  EmptyDomain,
  NotApplicable,
  Inconsistent,
  Identity,
  Loxodromic,
  ClassMismatch,
  InvalidArgument,
  ParseError,
  DeterminantError,
};

/// Machine-readable name, e.g. "NoBisector". Used in CLI error documents.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypdom
