#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace assign {

enum class ErrorCode {
  LengthMismatch,
  UnsortedSupport,
  NonPositiveProb,
  ProbSumOutOfTolerance,
  DomainError,
  IndexOutOfRange,
  CapacityError,
  UnsortedRewards,
  ValueNotInSupport,
  EmptyRewards,
  TooManySlots,
  UnknownKind,
  RewardOverflow,
  InvalidArgument,
  ParseError,
  // service-level
  PendingRollExists,
  NoPendingRoll,
  GameFinished,
  WrongMode,
  VersionConflict,
  SlotOccupiedOrUnknown,
  UnknownSession,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI and HTTP layers map them onto exit statuses and response bodies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace assign
