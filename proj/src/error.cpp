#include "yamada/error.hpp"

namespace yamada {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kNonExactDivision: return "NonExactDivision";
    case ErrorKind::kPoleAtZero: return "PoleAtZero";
    case ErrorKind::kParse: return "Parse";
    case ErrorKind::kUnknownEdge: return "UnknownEdge";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kContractLoop: return "ContractLoop";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kMissingAssignment: return "MissingAssignment";
    case ErrorKind::kDanglingHalfEdge: return "DanglingHalfEdge";
    case ErrorKind::kBadCrossingArity: return "BadCrossingArity";
    case ErrorKind::kDuplicateHalfEdge: return "DuplicateHalfEdge";
    case ErrorKind::kPartialAssignment: return "PartialAssignment";
    case ErrorKind::kNoAttachPair: return "NoAttachPair";
    case ErrorKind::kMoveNotApplicable: return "MoveNotApplicable";
    case ErrorKind::kBetaZero: return "BetaZero";
    case ErrorKind::kArityMismatch: return "ArityMismatch";
    case ErrorKind::kDegreeCap: return "DegreeCap";
    case ErrorKind::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kPoleEncountered: return "PoleEncountered";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace yamada
