#include "armstream/strategies.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "armstream/error.hpp"

namespace armstream {

void UcbConfig::validate() const {
  if (!(alpha > 1.0)) {
    throw Error(Errc::InvalidAlpha, "UCB alpha must exceed 1, got " + std::to_string(alpha));
  }
}

double ucb_index(const ArmStats& stats, std::uint64_t t, const UcbConfig& cfg) {
  if (stats.pulls == 0) {
    throw Error(Errc::ZeroPulls, "arm " + std::to_string(stats.arm) + " has no pulls");
  }
  if (t == 0) {
    throw Error(Errc::InvalidArgument, "UCB time index starts at 1");
  }
  return stats.mean_estimate +
         std::sqrt(cfg.alpha * std::log(static_cast<double>(t)) / static_cast<double>(stats.pulls));
}

namespace {

void check_arm_set(const BanditInstance& instance, std::span<const ArmId> arm_set) {
  if (arm_set.empty()) {
    throw Error(Errc::EmptyArmSet, "window has no arms");
  }
  for (std::size_t i = 0; i < arm_set.size(); ++i) {
    if (arm_set[i] >= instance.size()) {
      throw Error(Errc::ArmIndexOutOfRange, "arm " + std::to_string(arm_set[i]) + " >= K");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (arm_set[k] == arm_set[i]) {
        throw Error(Errc::InvalidArgument, "arm " + std::to_string(arm_set[i]) + " listed twice");
      }
    }
  }
}

WindowResult fresh_window(std::span<const ArmId> arm_set, std::uint64_t reserve) {
  WindowResult res;
  res.stats.reserve(arm_set.size());
  for (ArmId a : arm_set) res.stats.push_back(unsampled(a));
  res.pull_log.reserve(reserve);
  return res;
}

void pull(const BanditInstance& instance, WindowResult& res, std::size_t slot, Rng& rng) {
  const ArmId arm = res.stats[slot].arm;
  const double reward = sample_reward(instance, arm, rng);
  res.stats[slot] = update_stats(res.stats[slot], reward);
  ++res.pulls_used;
  res.pull_log.push_back(PullRecord{res.pulls_used, arm, reward});
}

}  // namespace

WindowResult run_allocation(const BanditInstance& instance, std::span<const ArmId> arm_set,
                            std::uint64_t horizon, const UcbConfig& cfg, Rng& rng) {
  cfg.validate();
  check_arm_set(instance, arm_set);
  WindowResult res = fresh_window(arm_set, horizon);
  const std::size_t n = arm_set.size();
  for (std::size_t i = 0; i < n && res.pulls_used < horizon; ++i) {
    pull(instance, res, i, rng);
  }
  while (res.pulls_used < horizon) {
    const std::uint64_t t = res.pulls_used + 1;
    const double log_t = std::log(static_cast<double>(t));
    std::size_t best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const ArmStats& s = res.stats[i];
      const double idx =
          s.mean_estimate + std::sqrt(cfg.alpha * log_t / static_cast<double>(s.pulls));
      if (idx > best_index || (idx == best_index && s.arm < res.stats[best].arm)) {
        best_index = idx;
        best = i;
      }
    }
    pull(instance, res, best, rng);
  }
  return res;
}

WindowResult run_uniform(const BanditInstance& instance, std::span<const ArmId> arm_set,
                         std::uint64_t per_arm, Rng& rng) {
  check_arm_set(instance, arm_set);
  WindowResult res = fresh_window(arm_set, per_arm * arm_set.size());
  for (std::uint64_t round = 0; round < per_arm; ++round) {
    for (std::size_t i = 0; i < arm_set.size(); ++i) {
      pull(instance, res, i, rng);
    }
  }
  return res;
}

ArmId most_played_arm(std::span<const ArmStats> stats) {
  const ArmStats* best = nullptr;
  for (const auto& s : stats) {
    if (!best || s.pulls > best->pulls || (s.pulls == best->pulls && s.arm < best->arm)) {
      best = &s;
    }
  }
  if (!best || best->pulls == 0) {
    throw Error(Errc::EmptyWindow, "no pulls in window");
  }
  return best->arm;
}

ArmId most_played_arm(const WindowResult& res) {
  if (res.pulls_used == 0) {
    throw Error(Errc::EmptyWindow, "no pulls in window");
  }
  return most_played_arm(std::span<const ArmStats>(res.stats));
}

ArmId empirically_best_arm(std::span<const ArmStats> stats) {
  if (stats.empty()) {
    throw Error(Errc::EmptyWindow, "no arms in window");
  }
  const ArmStats* best = nullptr;
  for (const auto& s : stats) {
    if (!s.sampled()) {
      throw Error(Errc::UnsampledArmPresent, "arm " + std::to_string(s.arm) + " was never pulled");
    }
    if (!best || s.mean_estimate > best->mean_estimate ||
        (s.mean_estimate == best->mean_estimate && s.arm < best->arm)) {
      best = &s;
    }
  }
  return best->arm;
}

ArmId empirically_best_arm(const WindowResult& res) {
  return empirically_best_arm(std::span<const ArmStats>(res.stats));
}

}  // namespace armstream
