#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace armstream {

using ArmId = std::size_t;

enum class RewardDist { Bernoulli, BoundedUniform };

// A K-armed stochastic instance. Arm order is the arrival order seen by the
// streaming runners, so it is preserved exactly as given.
class BanditInstance {
 public:
  BanditInstance(std::vector<double> means, RewardDist dist);

  std::size_t size() const noexcept { return means_.size(); }
  RewardDist dist() const noexcept { return dist_; }
  const std::vector<double>& means() const noexcept { return means_; }
  double mean(ArmId arm) const;
  double mu_star() const noexcept { return mu_star_; }
  const std::vector<double>& gaps() const noexcept { return gaps_; }
  // Smallest positive gap; empty when every arm ties with the best.
  std::optional<double> delta_min() const noexcept { return delta_min_; }
  // Lowest-index arm attaining mu_star.
  ArmId best_arm() const noexcept { return best_arm_; }
  bool is_optimal(ArmId arm) const { return gaps_.at(arm) == 0.0; }
  bool has_unique_best() const noexcept;

  // Same arms, re-ordered so that position p holds the arm order[p].
  BanditInstance permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<double> means_;
  RewardDist dist_;
  double mu_star_ = 0.0;
  std::vector<double> gaps_;
  std::optional<double> delta_min_;
  ArmId best_arm_ = 0;
};

BanditInstance make_instance(std::vector<double> means, RewardDist dist = RewardDist::Bernoulli);

// Arms 0.99, 0.99 - step, ... ; default step is min(0.1, 0.98 / (K - 1)) so
// every mean stays inside [0.01, 0.99].
BanditInstance linear_grid(std::size_t num_arms, std::optional<double> step = std::nullopt,
                           RewardDist dist = RewardDist::Bernoulli);

// Two arms with means (0.9, 0.9 - gap).
BanditInstance two_arm(double gap, RewardDist dist = RewardDist::Bernoulli);

// SplitMix64 stream. The n-th output is mix(seed + n * golden), so the
// generator is counter based and a replication's stream depends only on its
// seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return counter_; }

  // Seed of replication `index` under `base_seed`:
  //   mix(mix(base_seed) ^ (index + 1) * 0xD1B54A32D192ED03)
  static std::uint64_t derive(std::uint64_t base_seed, std::uint64_t index) noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

// One reward from `arm`; advances `rng` exactly once.
double sample_reward(const BanditInstance& instance, ArmId arm, Rng& rng);

struct ArmStats {
  ArmId arm = 0;
  std::uint64_t pulls = 0;
  // NaN while pulls == 0.
  double mean_estimate = std::numeric_limits<double>::quiet_NaN();

  bool sampled() const noexcept { return pulls > 0; }
};

ArmStats unsampled(ArmId arm) noexcept;
ArmStats update_stats(ArmStats stats, double reward);

// The bounded set of arms whose statistics are resident. Admitting more than
// `capacity` arms throws MemoryCapExceeded.
class ArmMemory {
 public:
  explicit ArmMemory(std::size_t capacity);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return slots_.size(); }
  std::size_t peak() const noexcept { return peak_; }
  const std::vector<ArmStats>& slots() const noexcept { return slots_; }
  std::optional<ArmId> carried() const noexcept { return carried_; }

  bool contains(ArmId arm) const noexcept;
  const ArmStats* find(ArmId arm) const noexcept;
  void admit(ArmId arm);
  void store(const ArmStats& stats);
  // Drops every slot except the carried arm (if any).
  void evict_all_but_carried();
  void set_carried(ArmId arm);
  void reset_stats(ArmId arm);

 private:
  std::size_t capacity_;
  std::vector<ArmStats> slots_;
  std::optional<ArmId> carried_;
  std::size_t peak_ = 0;
};

}  // namespace armstream
