#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace yamada {

/// Every failure the library reports. The CLI prints the name of the kind.
enum class ErrorKind {
  kDivisionByZero,
  kNonExactDivision,
  kPoleAtZero,
  kParse,
  kUnknownEdge,
  kUnknownVertex,
  kContractLoop,
  kTooLarge,
  kMissingAssignment,
  kDanglingHalfEdge,
  kBadCrossingArity,
  kDuplicateHalfEdge,
  kPartialAssignment,
  kNoAttachPair,
  kMoveNotApplicable,
  kBetaZero,
  kArityMismatch,
  kDegreeCap,
  kZeroPolynomial,
  kNoConvergence,
  kPoleEncountered,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace yamada
