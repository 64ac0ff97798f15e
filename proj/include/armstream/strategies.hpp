#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "armstream/core_model.hpp"

namespace armstream {

// UCB(alpha): mean + sqrt(alpha * ln(t) / pulls).
struct UcbConfig {
  double alpha = 2.0;

  void validate() const;
};

struct PullRecord {
  std::uint64_t t;  // 1-based step inside the window
  ArmId arm;
  double reward;
};

struct WindowResult {
  std::vector<ArmStats> stats;  // one entry per arm of the window, in window order
  std::uint64_t pulls_used = 0;
  std::vector<PullRecord> pull_log;
};

double ucb_index(const ArmStats& stats, std::uint64_t t, const UcbConfig& cfg);

// Runs UCB(alpha) on `arm_set` for `horizon` pulls: one round-robin pass in
// window order first, then argmax of the index with lowest-arm-id tie-break.
WindowResult run_allocation(const BanditInstance& instance, std::span<const ArmId> arm_set,
                            std::uint64_t horizon, const UcbConfig& cfg, Rng& rng);

// Plays every arm of `arm_set` `per_arm` times in round-robin order.
WindowResult run_uniform(const BanditInstance& instance, std::span<const ArmId> arm_set,
                         std::uint64_t per_arm, Rng& rng);

ArmId most_played_arm(const WindowResult& res);
ArmId most_played_arm(std::span<const ArmStats> stats);

ArmId empirically_best_arm(const WindowResult& res);
ArmId empirically_best_arm(std::span<const ArmStats> stats);

}  // namespace armstream
