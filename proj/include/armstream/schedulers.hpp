#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "armstream/core_model.hpp"

namespace armstream {

enum class Growth { Square, Double, TwoPass, Hybrid };
enum class LogBase { Natural, Base2 };

// h0 = ceil((K - 1) / (M - 1)); requires 2 <= M < K.
std::size_t subphase_count(std::size_t num_arms, std::size_t memory);

struct SubPhaseWindow {
  std::vector<ArmId> members;
  std::size_t cursor_after = 0;
};

// Builds the next sub-phase window of a phase. Arms are streamed in arrival
// order starting at position `cursor`; `carried` (the recommendation coming in)
// takes one slot and the rest are filled with the next unseen arms. The arm
// that entered the phase as the carried one (`phase_entry`) is resident from
// the first window on and is never streamed again. A carried arm that the raw
// window would have contained stays in place; otherwise it is listed first.
SubPhaseWindow next_window(std::size_t cursor, std::size_t num_arms, std::size_t memory,
                           std::optional<ArmId> carried,
                           std::optional<ArmId> phase_entry = std::nullopt);

struct Truncation {
  std::size_t phase = 0;     // 1-based
  std::size_t subphase = 0;  // 1-based
  std::uint64_t pulls = 0;   // pulls the truncated window receives
};

struct PhaseSchedule {
  Growth growth = Growth::Square;
  std::size_t num_arms = 0;
  std::size_t memory = 0;
  std::size_t h0 = 0;
  std::uint64_t horizon = 0;
  // Nominal per-window budget b_w of each realized phase.
  std::vector<std::uint64_t> budgets;
  // Pulls each realized window receives; allotted[w][j] for 0-based w, j.
  std::vector<std::vector<std::uint64_t>> allotted;
  // Last window that receives pulls, and how many.
  Truncation truncation;

  std::size_t phases() const noexcept { return allotted.size(); }
  std::uint64_t total() const noexcept;
};

// UCB-LAM schedule: b1 = M(M+2), then b_w = b_{w-1}^2 (Square) or 2 b_{w-1}
// (Double), cut exactly at T.
PhaseSchedule make_multipass_schedule(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                                      Growth growth);

struct TwoPassPlan {
  double b1_real = 0.0;  // root of x^2 + x = T / h0
  double b2_real = 0.0;  // b1_real^2
  std::uint64_t b1 = 0;
  std::uint64_t b2 = 0;
  std::uint64_t residue = 0;  // added to the final window of pass 2
  PhaseSchedule schedule;
};

TwoPassPlan make_two_pass_schedule(std::size_t num_arms, std::size_t memory, std::uint64_t horizon);

// Advisory horizon check T >= K (1 + 4 alpha ln(T) / (M delta^2)) using delta_min.
bool two_pass_horizon_sufficient(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                                 double alpha, double delta_min);

struct HybridPlan {
  std::uint64_t b1 = 0;           // pulls per arm in pass 1
  std::uint64_t b2 = 0;           // per-window budget in pass 2
  std::uint64_t first_pass_pulls = 0;
  std::uint64_t residue = 0;      // added to the final window of pass 2
  PhaseSchedule schedule;
};

// b1 = ceil(ln(1 + delta^2 T^2 / K) / delta^2) unless overridden. Pass 1 plays
// each arm b1 times; pass 2 splits the remaining horizon across h0 windows.
HybridPlan make_hybrid_schedule(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                                std::optional<double> delta_min,
                                std::optional<std::uint64_t> b1_override = std::nullopt,
                                LogBase log_base = LogBase::Natural);

// Number of arms the j-th window of a phase streams in (first window: M,
// later ones M - 1, the last one whatever is left).
std::vector<std::size_t> fresh_arms_per_window(std::size_t num_arms, std::size_t memory);

}  // namespace armstream
