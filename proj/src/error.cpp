#include "adelic/error.hpp"

namespace adelic {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NoIntegerSolution: return "NoIntegerSolution";
    case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
    case ErrorCode::InfinityOnFiniteAdele: return "InfinityOnFiniteAdele";
    case ErrorCode::ZeroComponent: return "ZeroComponent";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::ClosedOrbitMiss: return "ClosedOrbitMiss";
    case ErrorCode::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::MalformedDescriptor: return "MalformedDescriptor";
    case ErrorCode::ImproperPoint: return "ImproperPoint";
    case ErrorCode::NegativeForQPlus: return "NegativeForQPlus";
  }
  return "Unknown";
}

bool is_domain_error(ErrorCode code) noexcept {
  return code != ErrorCode::InvalidArgument && code != ErrorCode::ParseError;
}

}  // namespace adelic
