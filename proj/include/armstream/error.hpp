#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace armstream {

enum class Errc {
  TooFewArms,
  MeanOutOfRange,
  ArmIndexOutOfRange,
  RewardOutOfRange,
  InvalidAlpha,
  ZeroPulls,
  EmptyArmSet,
  EmptyWindow,
  UnsampledArmPresent,
  MemoryTooSmall,
  MemoryCoversAll,
  MemoryCapExceeded,
  CursorOutOfRange,
  HorizonTooSmall,
  HorizonTooSmallForHybrid,
  HorizonBelowOnePhase,
  MissingDeltaMin,
  InvalidArgument,
  InstanceMismatch,
  MissingDiagnostics,
  HeterogeneousTraces,
  BudgetExceedsHorizon,
  DomainError,
  InsufficientGrid,
  ConfigError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace armstream
