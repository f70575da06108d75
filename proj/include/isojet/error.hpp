#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isojet {

enum class ErrorKind {
  // scalar
  DivisionByZero,
  FieldMismatch,
  NotSupported,
  InvalidField,
  // linalg / trunc
  DimensionMismatch,
  SpecMismatch,
  ConstantTermNotAllowed,
  TruncationUnsafe,
  NotAUnit,
  // contact
  SingularJacobian,
  InvalidElement,
  PreconditionFailed,
  PointNotOnVariety,
  // tangent
  ZeroInput,
  RepeatedRoots,
  RootsNotInField,
  // derlog
  WitnessInvalid,
  DerivationFeasible,
  NotRegular,
  CharPNotSupported,
  StraightenFailed,
  // hs / isoscan
  FieldNotFinite,
  SearchLimitExceeded,
  DomainTooLarge,
  SearchSpaceTooLarge,
  // parsing / cli
  SyntaxError,
  UnknownVariable,
  DegreeExceedsBeta,
  UnknownDemo,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isojet
