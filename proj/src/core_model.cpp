#include "armstream/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "armstream/error.hpp"

namespace armstream {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

BanditInstance::BanditInstance(std::vector<double> means, RewardDist dist)
    : means_(std::move(means)), dist_(dist) {
  if (means_.size() < 2) {
    throw Error(Errc::TooFewArms, "need at least 2 arms, got " + std::to_string(means_.size()));
  }
  for (std::size_t i = 0; i < means_.size(); ++i) {
    const double m = means_[i];
    if (!(m >= 0.0 && m <= 1.0)) {
      throw Error(Errc::MeanOutOfRange, "mean of arm " + std::to_string(i) + " is " +
                                            std::to_string(m) + ", outside [0,1]");
    }
  }
  const auto best = std::max_element(means_.begin(), means_.end());
  mu_star_ = *best;
  best_arm_ = static_cast<ArmId>(best - means_.begin());
  gaps_.reserve(means_.size());
  for (double m : means_) {
    gaps_.push_back(mu_star_ - m);
  }
  for (double g : gaps_) {
    if (g > 0.0 && (!delta_min_ || g < *delta_min_)) {
      delta_min_ = g;
    }
  }
}

double BanditInstance::mean(ArmId arm) const {
  if (arm >= means_.size()) {
    throw Error(Errc::ArmIndexOutOfRange, "arm " + std::to_string(arm) + " >= K=" +
                                              std::to_string(means_.size()));
  }
  return means_[arm];
}

bool BanditInstance::has_unique_best() const noexcept {
  return std::count(gaps_.begin(), gaps_.end(), 0.0) == 1;
}

BanditInstance BanditInstance::permuted(std::span<const std::size_t> order) const {
  if (order.size() != means_.size()) {
    throw Error(Errc::InvalidArgument, "permutation length does not match K");
  }
  std::vector<bool> seen(means_.size(), false);
  std::vector<double> out;
  out.reserve(means_.size());
  for (std::size_t src : order) {
    if (src >= means_.size() || seen[src]) {
      throw Error(Errc::InvalidArgument, "order is not a permutation of [K]");
    }
    seen[src] = true;
    out.push_back(means_[src]);
  }
  return BanditInstance(std::move(out), dist_);
}

BanditInstance make_instance(std::vector<double> means, RewardDist dist) {
  return BanditInstance(std::move(means), dist);
}

BanditInstance linear_grid(std::size_t num_arms, std::optional<double> step, RewardDist dist) {
  if (num_arms < 2) {
    throw Error(Errc::TooFewArms, "linear grid needs K >= 2");
  }
  const double d = step.value_or(std::min(0.1, 0.98 / static_cast<double>(num_arms - 1)));
  std::vector<double> means(num_arms);
  for (std::size_t i = 0; i < num_arms; ++i) {
    means[i] = 0.99 - static_cast<double>(i) * d;
  }
  return BanditInstance(std::move(means), dist);
}

BanditInstance two_arm(double gap, RewardDist dist) {
  return BanditInstance({0.9, 0.9 - gap}, dist);
}

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() noexcept {
  ++counter_;
  return splitmix64_mix(seed_ + counter_ * kGolden);
}

std::uint64_t Rng::derive(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return splitmix64_mix(splitmix64_mix(base_seed) ^ ((index + 1) * 0xD1B54A32D192ED03ULL));
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    // Lemire's multiply-shift; bias is below 2^-40 for any n used here.
    const auto bound = static_cast<unsigned __int128>(i);
    const auto j = static_cast<std::size_t>((static_cast<unsigned __int128>(rng.next()) * bound) >> 64);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

double sample_reward(const BanditInstance& instance, ArmId arm, Rng& rng) {
  const double mu = instance.mean(arm);
  const double u = rng.uniform();
  switch (instance.dist()) {
    case RewardDist::Bernoulli:
      return u < mu ? 1.0 : 0.0;
    case RewardDist::BoundedUniform: {
      const double half = std::min(mu, 1.0 - mu);
      return (mu - half) + 2.0 * half * u;
    }
  }
  return 0.0;
}

ArmStats unsampled(ArmId arm) noexcept {
  return ArmStats{arm, 0, std::numeric_limits<double>::quiet_NaN()};
}

ArmStats update_stats(ArmStats stats, double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw Error(Errc::RewardOutOfRange, "reward " + std::to_string(reward) + " outside [0,1]");
  }
  ++stats.pulls;
  if (stats.pulls == 1) {
    stats.mean_estimate = reward;
  } else {
    stats.mean_estimate += (reward - stats.mean_estimate) / static_cast<double>(stats.pulls);
  }
  return stats;
}

ArmMemory::ArmMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) {
    throw Error(Errc::MemoryTooSmall, "arm memory needs at least one slot");
  }
  slots_.reserve(capacity_);
}

bool ArmMemory::contains(ArmId arm) const noexcept { return find(arm) != nullptr; }

const ArmStats* ArmMemory::find(ArmId arm) const noexcept {
  for (const auto& s : slots_) {
    if (s.arm == arm) return &s;
  }
  return nullptr;
}

void ArmMemory::admit(ArmId arm) {
  if (contains(arm)) return;
  if (slots_.size() >= capacity_) {
    throw Error(Errc::MemoryCapExceeded, "cannot admit arm " + std::to_string(arm) +
                                             ": memory of size " + std::to_string(capacity_) +
                                             " is full");
  }
  slots_.push_back(unsampled(arm));
  peak_ = std::max(peak_, slots_.size());
}

void ArmMemory::store(const ArmStats& stats) {
  for (auto& s : slots_) {
    if (s.arm == stats.arm) {
      s = stats;
      return;
    }
  }
  throw Error(Errc::ArmIndexOutOfRange, "arm " + std::to_string(stats.arm) + " is not resident");
}

void ArmMemory::evict_all_but_carried() {
  std::erase_if(slots_, [this](const ArmStats& s) { return !carried_ || s.arm != *carried_; });
}

void ArmMemory::set_carried(ArmId arm) {
  if (!contains(arm)) {
    throw Error(Errc::ArmIndexOutOfRange, "carried arm " + std::to_string(arm) + " is not resident");
  }
  carried_ = arm;
}

void ArmMemory::reset_stats(ArmId arm) { store(unsampled(arm)); }

}  // namespace armstream
