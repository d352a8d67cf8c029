#include "ucx/error.hpp"

namespace ucx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ucx
