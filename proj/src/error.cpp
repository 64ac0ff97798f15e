#include "armstream/error.hpp"

namespace armstream {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::TooFewArms: return "TooFewArms";
    case Errc::MeanOutOfRange: return "MeanOutOfRange";
    case Errc::ArmIndexOutOfRange: return "ArmIndexOutOfRange";
    case Errc::RewardOutOfRange: return "RewardOutOfRange";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::ZeroPulls: return "ZeroPulls";
    case Errc::EmptyArmSet: return "EmptyArmSet";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::UnsampledArmPresent: return "UnsampledArmPresent";
    case Errc::MemoryTooSmall: return "MemoryTooSmall";
    case Errc::MemoryCoversAll: return "MemoryCoversAll";
    case Errc::MemoryCapExceeded: return "MemoryCapExceeded";
    case Errc::CursorOutOfRange: return "CursorOutOfRange";
    case Errc::HorizonTooSmall: return "HorizonTooSmall";
    case Errc::HorizonTooSmallForHybrid: return "HorizonTooSmallForHybrid";
    case Errc::HorizonBelowOnePhase: return "HorizonBelowOnePhase";
    case Errc::MissingDeltaMin: return "MissingDeltaMin";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InstanceMismatch: return "InstanceMismatch";
    case Errc::MissingDiagnostics: return "MissingDiagnostics";
    case Errc::HeterogeneousTraces: return "HeterogeneousTraces";
    case Errc::BudgetExceedsHorizon: return "BudgetExceedsHorizon";
    case Errc::DomainError: return "DomainError";
    case Errc::InsufficientGrid: return "InsufficientGrid";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace armstream
