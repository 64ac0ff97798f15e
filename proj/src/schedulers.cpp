#include "armstream/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "armstream/error.hpp"

namespace armstream {

namespace {

void check_memory(std::size_t num_arms, std::size_t memory) {
  if (memory < 2) {
    throw Error(Errc::MemoryTooSmall, "arm memory must hold at least 2 arms, got " +
                                          std::to_string(memory));
  }
  if (memory >= num_arms) {
    throw Error(Errc::MemoryCoversAll, "memory " + std::to_string(memory) + " holds all " +
                                           std::to_string(num_arms) + " arms; run UCB1 instead");
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

PhaseSchedule empty_schedule(Growth growth, std::size_t num_arms, std::size_t memory,
                             std::uint64_t horizon) {
  PhaseSchedule s;
  s.growth = growth;
  s.num_arms = num_arms;
  s.memory = memory;
  s.h0 = subphase_count(num_arms, memory);
  s.horizon = horizon;
  return s;
}

void close_schedule(PhaseSchedule& s) {
  for (std::size_t w = s.allotted.size(); w-- > 0;) {
    for (std::size_t j = s.allotted[w].size(); j-- > 0;) {
      if (s.allotted[w][j] > 0) {
        s.truncation = Truncation{w + 1, j + 1, s.allotted[w][j]};
        return;
      }
    }
  }
}

}  // namespace

std::uint64_t PhaseSchedule::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& phase : allotted) {
    sum = std::accumulate(phase.begin(), phase.end(), sum);
  }
  return sum;
}

std::size_t subphase_count(std::size_t num_arms, std::size_t memory) {
  check_memory(num_arms, memory);
  return (num_arms - 1 + memory - 2) / (memory - 1);
}

SubPhaseWindow next_window(std::size_t cursor, std::size_t num_arms, std::size_t memory,
                           std::optional<ArmId> carried, std::optional<ArmId> phase_entry) {
  if (cursor >= num_arms) {
    throw Error(Errc::CursorOutOfRange, "cursor " + std::to_string(cursor) + " >= K=" +
                                            std::to_string(num_arms));
  }
  if (memory == 0) {
    throw Error(Errc::MemoryTooSmall, "memory must be positive");
  }
  if (carried && *carried >= num_arms) {
    throw Error(Errc::ArmIndexOutOfRange, "carried arm " + std::to_string(*carried) + " >= K");
  }
  const auto resident = [&](std::size_t arm) {
    return (carried && arm == *carried) || (phase_entry && arm == *phase_entry);
  };
  const std::size_t want = carried ? memory - 1 : memory;

  SubPhaseWindow win;
  std::vector<ArmId> fresh;
  std::size_t pos = cursor;
  while (pos < num_arms && fresh.size() < want) {
    if (!resident(pos)) fresh.push_back(pos);
    ++pos;
  }
  // Positions that only hold already-resident arms are consumed as well.
  while (pos < num_arms && resident(pos)) ++pos;
  win.cursor_after = pos;

  if (!carried) {
    win.members = std::move(fresh);
    return win;
  }
  const ArmId c = *carried;
  const bool in_raw_range = c >= cursor && c < pos;
  if (in_raw_range) {
    fresh.push_back(c);
    std::sort(fresh.begin(), fresh.end());
    win.members = std::move(fresh);
  } else {
    win.members.reserve(fresh.size() + 1);
    win.members.push_back(c);
    win.members.insert(win.members.end(), fresh.begin(), fresh.end());
  }
  return win;
}

std::vector<std::size_t> fresh_arms_per_window(std::size_t num_arms, std::size_t memory) {
  const std::size_t h0 = subphase_count(num_arms, memory);
  std::vector<std::size_t> counts(h0, memory - 1);
  counts.front() = memory;  // the first window also streams the initial recommendation
  const std::size_t listed = memory + (h0 - 1) * (memory - 1);
  counts.back() -= listed - num_arms;
  return counts;
}

PhaseSchedule make_multipass_schedule(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                                      Growth growth) {
  if (growth != Growth::Square && growth != Growth::Double) {
    throw Error(Errc::InvalidArgument, "multipass schedule takes Square or Double growth");
  }
  PhaseSchedule s = empty_schedule(growth, num_arms, memory, horizon);
  if (horizon == 0) {
    throw Error(Errc::HorizonTooSmall, "horizon must be at least 1");
  }
  std::uint64_t budget = static_cast<std::uint64_t>(memory) * (memory + 2);
  std::uint64_t remaining = horizon;
  while (remaining > 0) {
    std::vector<std::uint64_t> phase;
    phase.reserve(s.h0);
    for (std::size_t j = 0; j < s.h0 && remaining > 0; ++j) {
      const std::uint64_t a = std::min(budget, remaining);
      phase.push_back(a);
      remaining -= a;
    }
    s.budgets.push_back(budget);
    s.allotted.push_back(std::move(phase));
    budget = growth == Growth::Square ? saturating_mul(budget, budget) : saturating_mul(budget, 2);
  }
  close_schedule(s);
  return s;
}

TwoPassPlan make_two_pass_schedule(std::size_t num_arms, std::size_t memory, std::uint64_t horizon) {
  TwoPassPlan plan;
  plan.schedule = empty_schedule(Growth::TwoPass, num_arms, memory, horizon);
  const std::uint64_t h0 = plan.schedule.h0;
  if (horizon < 2 * h0) {
    throw Error(Errc::HorizonTooSmall, "two passes need T >= 2*h0 = " + std::to_string(2 * h0) +
                                           ", got " + std::to_string(horizon));
  }
  const double q = static_cast<double>(horizon) / static_cast<double>(h0);
  plan.b1_real = (std::sqrt(1.0 + 4.0 * q) - 1.0) / 2.0;
  plan.b2_real = plan.b1_real * plan.b1_real;

  // floor(b1_real) is the largest n with h0 * (n^2 + n) <= T; settle it in
  // integers so perfect squares do not depend on sqrt rounding.
  std::uint64_t n = static_cast<std::uint64_t>(plan.b1_real);
  while (n > 0 && h0 * (n * n + n) > horizon) --n;
  while (h0 * ((n + 1) * (n + 1) + (n + 1)) <= horizon) ++n;
  plan.b1 = n;
  plan.b2 = horizon / h0 - plan.b1;
  plan.residue = horizon - h0 * (plan.b1 + plan.b2);

  plan.schedule.budgets = {plan.b1, plan.b2};
  plan.schedule.allotted = {std::vector<std::uint64_t>(h0, plan.b1),
                            std::vector<std::uint64_t>(h0, plan.b2)};
  plan.schedule.allotted[1].back() += plan.residue;
  close_schedule(plan.schedule);
  return plan;
}

bool two_pass_horizon_sufficient(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                                 double alpha, double delta_min) {
  const double t = static_cast<double>(horizon);
  const double need = static_cast<double>(num_arms) *
                      (1.0 + 4.0 * alpha * std::log(t) /
                                 (static_cast<double>(memory) * delta_min * delta_min));
  return t >= need;
}

HybridPlan make_hybrid_schedule(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                                std::optional<double> delta_min,
                                std::optional<std::uint64_t> b1_override, LogBase log_base) {
  HybridPlan plan;
  plan.schedule = empty_schedule(Growth::Hybrid, num_arms, memory, horizon);
  const std::uint64_t h0 = plan.schedule.h0;
  const std::uint64_t k = num_arms;

  if (b1_override) {
    if (*b1_override == 0) {
      throw Error(Errc::InvalidArgument, "b1 override must be at least 1");
    }
    plan.b1 = *b1_override;
  } else {
    if (!delta_min) {
      throw Error(Errc::MissingDeltaMin, "hybrid schedule needs delta_min or a b1 override");
    }
    const double d = *delta_min;
    if (!(d > 0.0 && d <= 1.0)) {
      throw Error(Errc::InvalidArgument, "delta_min must lie in (0,1], got " + std::to_string(d));
    }
    const double t = static_cast<double>(horizon);
    const double f = 1.0 + d * d * t * t / static_cast<double>(k);
    const double lg = log_base == LogBase::Natural ? std::log(f) : std::log2(f);
    plan.b1 = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(lg / (d * d))));
  }
  plan.first_pass_pulls = saturating_mul(k, plan.b1);
  if (plan.first_pass_pulls >= horizon || horizon - plan.first_pass_pulls < h0) {
    throw Error(Errc::HorizonTooSmallForHybrid,
                "K*b1 = " + std::to_string(plan.first_pass_pulls) +
                    " leaves fewer than h0 pulls of T = " + std::to_string(horizon));
  }
  const std::uint64_t rest = horizon - plan.first_pass_pulls;
  plan.b2 = rest / h0;
  plan.residue = rest - plan.b2 * h0;

  std::vector<std::uint64_t> first;
  for (std::size_t fresh : fresh_arms_per_window(num_arms, memory)) {
    first.push_back(plan.b1 * fresh);
  }
  plan.schedule.budgets = {plan.b1, plan.b2};
  plan.schedule.allotted = {std::move(first), std::vector<std::uint64_t>(h0, plan.b2)};
  plan.schedule.allotted[1].back() += plan.residue;
  close_schedule(plan.schedule);
  return plan;
}

}  // namespace armstream
