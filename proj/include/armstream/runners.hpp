#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "armstream/core_model.hpp"
#include "armstream/schedulers.hpp"
#include "armstream/strategies.hpp"

namespace armstream {

enum class Algorithm { Ucb1, UcbM, UcbLam, TwoPassLam, TwoPassHybrid };

std::string_view algorithm_name(Algorithm algo) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

struct PullEvent {
  std::uint64_t t;  // 1-based global step
  ArmId arm;
  double reward;
  std::uint32_t phase;     // 1-based
  std::uint32_t subphase;  // 1-based
};

struct WindowDiagnostic {
  std::size_t phase = 0;
  std::size_t subphase = 0;
  std::vector<ArmId> members;
  ArmId recommended = 0;
  bool best_in_memory = false;    // event A_s
  bool best_recommended = false;  // event B_s
  std::uint64_t budget = 0;       // allotted pulls
  std::uint64_t pulls = 0;        // realized pulls
  std::uint64_t first_pull = 0;   // offset of the window's first pull in RunTrace::pulls
};

struct RunTrace {
  Algorithm algorithm = Algorithm::Ucb1;
  std::size_t num_arms = 0;
  std::size_t memory = 0;
  std::uint64_t horizon = 0;
  std::vector<PullEvent> pulls;
  std::vector<WindowDiagnostic> windows;
  std::size_t passes_completed = 0;
  std::size_t peak_resident = 0;
};

struct HybridOptions {
  std::optional<double> delta_min;
  std::optional<std::uint64_t> b1_override;
  LogBase log_base = LogBase::Natural;
};

RunTrace run_ucb1_full(const BanditInstance& instance, std::uint64_t horizon, const UcbConfig& cfg,
                       std::uint64_t seed);

// UCB-LAM. Growth::Double gives the UCB-M baseline. Falls back to UCB1 on all
// arms when memory >= K.
RunTrace run_ucb_lam(const BanditInstance& instance, std::size_t memory, std::uint64_t horizon,
                     const UcbConfig& cfg, std::uint64_t seed, Growth growth = Growth::Square);

RunTrace run_two_pass_ucb_lam(const BanditInstance& instance, std::size_t memory,
                              std::uint64_t horizon, const UcbConfig& cfg, std::uint64_t seed);

RunTrace run_two_pass_hybrid(const BanditInstance& instance, std::size_t memory,
                             std::uint64_t horizon, std::optional<double> delta_min,
                             const UcbConfig& cfg, std::uint64_t seed,
                             std::optional<std::uint64_t> b1_override = std::nullopt,
                             LogBase log_base = LogBase::Natural);

// Pass 1 of the hybrid on its own: every arm is played `b1` times, window by
// window, and the empirically best arm is carried along. Returns the arm
// carried out of the last window.
ArmId hybrid_first_pass(const BanditInstance& instance, std::size_t memory, std::uint64_t b1,
                        Rng& rng);

RunTrace run_algorithm(Algorithm algo, const BanditInstance& instance, std::size_t memory,
                       std::uint64_t horizon, const UcbConfig& cfg, std::uint64_t seed,
                       const HybridOptions& hybrid = {});

}  // namespace armstream
