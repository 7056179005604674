#include "assign/error.hpp"

namespace assign {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnsortedSupport: return "UnsortedSupport";
    case ErrorCode::NonPositiveProb: return "NonPositiveProb";
    case ErrorCode::ProbSumOutOfTolerance: return "ProbSumOutOfTolerance";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CapacityError: return "CapacityError";
    case ErrorCode::UnsortedRewards: return "UnsortedRewards";
    case ErrorCode::ValueNotInSupport: return "ValueNotInSupport";
    case ErrorCode::EmptyRewards: return "EmptyRewards";
    case ErrorCode::TooManySlots: return "TooManySlots";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::RewardOverflow: return "RewardOverflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PendingRollExists: return "PendingRollExists";
    case ErrorCode::NoPendingRoll: return "NoPendingRoll";
    case ErrorCode::GameFinished: return "GameFinished";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::VersionConflict: return "VersionConflict";
    case ErrorCode::SlotOccupiedOrUnknown: return "SlotOccupiedOrUnknown";
    case ErrorCode::UnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

}  // namespace assign
