#include "armstream/runners.hpp"

#include <algorithm>
#include <string>

#include "armstream/error.hpp"

namespace armstream {

std::string_view algorithm_name(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Ucb1: return "ucb1";
    case Algorithm::UcbM: return "ucb_m";
    case Algorithm::UcbLam: return "ucb_lam";
    case Algorithm::TwoPassLam: return "two_pass_lam";
    case Algorithm::TwoPassHybrid: return "two_pass_hybrid";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : {Algorithm::Ucb1, Algorithm::UcbM, Algorithm::UcbLam, Algorithm::TwoPassLam,
                      Algorithm::TwoPassHybrid}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

namespace {

class TraceBuilder {
 public:
  TraceBuilder(Algorithm algo, const BanditInstance& instance, std::size_t memory,
               std::uint64_t horizon)
      : instance_(instance), mem_(memory) {
    trace_.algorithm = algo;
    trace_.num_arms = instance.size();
    trace_.memory = memory;
    trace_.horizon = horizon;
    trace_.pulls.reserve(horizon);
  }

  ArmMemory& memory() { return mem_; }

  // Makes exactly `members` resident, keeping the carried arm's slot.
  void load_window(const std::vector<ArmId>& members) {
    mem_.evict_all_but_carried();
    if (mem_.carried() &&
        std::find(members.begin(), members.end(), *mem_.carried()) == members.end()) {
      throw Error(Errc::InvalidArgument, "window does not contain the carried arm");
    }
    for (ArmId a : members) mem_.admit(a);
  }

  void record(std::size_t phase, std::size_t subphase, const std::vector<ArmId>& members,
              const std::vector<PullRecord>& log, ArmId recommended, std::uint64_t budget) {
    WindowDiagnostic d;
    d.phase = phase;
    d.subphase = subphase;
    d.members = members;
    d.recommended = recommended;
    d.best_in_memory = std::any_of(members.begin(), members.end(),
                                   [&](ArmId a) { return instance_.is_optimal(a); });
    d.best_recommended = instance_.is_optimal(recommended);
    d.budget = budget;
    d.pulls = log.size();
    d.first_pull = trace_.pulls.size();
    for (const auto& p : log) {
      if (!mem_.contains(p.arm)) {
        throw Error(Errc::MemoryCapExceeded, "pulled arm " + std::to_string(p.arm) +
                                                 " is not resident");
      }
      trace_.pulls.push_back(PullEvent{trace_.pulls.size() + 1, p.arm, p.reward,
                                       static_cast<std::uint32_t>(phase),
                                       static_cast<std::uint32_t>(subphase)});
    }
    if (!log.empty()) trace_.passes_completed = std::max(trace_.passes_completed, phase);
    trace_.windows.push_back(std::move(d));
  }

  RunTrace finish() {
    trace_.peak_resident = mem_.peak();
    if (trace_.pulls.size() != trace_.horizon) {
      throw Error(Errc::InvalidArgument, "trace holds " + std::to_string(trace_.pulls.size()) +
                                             " pulls, horizon is " + std::to_string(trace_.horizon));
    }
    return std::move(trace_);
  }

 private:
  const BanditInstance& instance_;
  ArmMemory mem_;
  RunTrace trace_;
};

// One UCB window over `members`, stats reset, most played arm carried on.
void ucb_window(TraceBuilder& tb, const BanditInstance& instance, std::size_t phase,
                std::size_t subphase, const std::vector<ArmId>& members, std::uint64_t pulls,
                const UcbConfig& cfg, Rng& rng) {
  tb.load_window(members);
  for (ArmId a : members) tb.memory().reset_stats(a);
  WindowResult res = run_allocation(instance, members, pulls, cfg, rng);
  for (const auto& s : res.stats) tb.memory().store(s);
  const ArmId rec = most_played_arm(res);
  tb.memory().set_carried(rec);
  tb.record(phase, subphase, members, res.pull_log, rec, pulls);
}

// Runs a UCB phase over all h0 windows with the given allotments.
void ucb_phase(TraceBuilder& tb, const BanditInstance& instance, std::size_t phase,
               const std::vector<std::uint64_t>& allotted, const UcbConfig& cfg, Rng& rng) {
  const std::size_t k = instance.size();
  const std::size_t m = tb.memory().capacity();
  const std::optional<ArmId> entry = tb.memory().carried();
  std::size_t cursor = 0;
  for (std::size_t j = 0; j < allotted.size(); ++j) {
    if (allotted[j] == 0) continue;
    SubPhaseWindow win = next_window(cursor, k, m, tb.memory().carried(), entry);
    cursor = win.cursor_after;
    ucb_window(tb, instance, phase, j + 1, win.members, allotted[j], cfg, rng);
  }
}

RunTrace run_schedule(Algorithm algo, const BanditInstance& instance, std::size_t memory,
                      const PhaseSchedule& sched, const UcbConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  TraceBuilder tb(algo, instance, memory, sched.horizon);
  // Initial recommendation is the first arm in arrival order.
  tb.memory().admit(0);
  tb.memory().set_carried(0);
  for (std::size_t w = 0; w < sched.allotted.size(); ++w) {
    ucb_phase(tb, instance, w + 1, sched.allotted[w], cfg, rng);
  }
  return tb.finish();
}

template <typename Fn>
void for_each_first_pass_window(const BanditInstance& instance, ArmMemory& mem, std::uint64_t b1,
                                Rng& rng, Fn&& on_window) {
  const std::size_t k = instance.size();
  const std::size_t m = mem.capacity();
  const std::size_t h0 = subphase_count(k, m);
  mem.admit(0);
  mem.set_carried(0);
  const std::optional<ArmId> entry = mem.carried();
  std::size_t cursor = 0;
  for (std::size_t j = 0; j < h0; ++j) {
    SubPhaseWindow win = next_window(cursor, k, m, mem.carried(), entry);
    cursor = win.cursor_after;
    mem.evict_all_but_carried();
    std::vector<ArmId> to_play;
    for (ArmId a : win.members) {
      mem.admit(a);
      if (!mem.find(a)->sampled()) to_play.push_back(a);
    }
    WindowResult res = run_uniform(instance, to_play, b1, rng);
    for (const auto& s : res.stats) mem.store(s);
    std::vector<ArmStats> window_stats;
    window_stats.reserve(win.members.size());
    for (ArmId a : win.members) window_stats.push_back(*mem.find(a));
    const ArmId rec = empirically_best_arm(window_stats);
    mem.set_carried(rec);
    on_window(j + 1, win.members, res, rec);
  }
}

}  // namespace

RunTrace run_ucb1_full(const BanditInstance& instance, std::uint64_t horizon, const UcbConfig& cfg,
                       std::uint64_t seed) {
  Rng rng(seed);
  TraceBuilder tb(Algorithm::Ucb1, instance, instance.size(), horizon);
  std::vector<ArmId> all(instance.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (horizon > 0) ucb_window(tb, instance, 1, 1, all, horizon, cfg, rng);
  return tb.finish();
}

namespace {
RunTrace as_full_ucb1(Algorithm algo, const BanditInstance& instance, std::uint64_t horizon,
                      const UcbConfig& cfg, std::uint64_t seed) {
  RunTrace t = run_ucb1_full(instance, horizon, cfg, seed);
  t.algorithm = algo;
  return t;
}
}  // namespace

RunTrace run_ucb_lam(const BanditInstance& instance, std::size_t memory, std::uint64_t horizon,
                     const UcbConfig& cfg, std::uint64_t seed, Growth growth) {
  const Algorithm algo = growth == Growth::Double ? Algorithm::UcbM : Algorithm::UcbLam;
  if (memory >= instance.size()) return as_full_ucb1(algo, instance, horizon, cfg, seed);
  const PhaseSchedule sched = make_multipass_schedule(instance.size(), memory, horizon, growth);
  return run_schedule(algo, instance, memory, sched, cfg, seed);
}

RunTrace run_two_pass_ucb_lam(const BanditInstance& instance, std::size_t memory,
                              std::uint64_t horizon, const UcbConfig& cfg, std::uint64_t seed) {
  if (memory >= instance.size()) {
    return as_full_ucb1(Algorithm::TwoPassLam, instance, horizon, cfg, seed);
  }
  const TwoPassPlan plan = make_two_pass_schedule(instance.size(), memory, horizon);
  return run_schedule(Algorithm::TwoPassLam, instance, memory, plan.schedule, cfg, seed);
}

RunTrace run_two_pass_hybrid(const BanditInstance& instance, std::size_t memory,
                             std::uint64_t horizon, std::optional<double> delta_min,
                             const UcbConfig& cfg, std::uint64_t seed,
                             std::optional<std::uint64_t> b1_override, LogBase log_base) {
  if (memory >= instance.size()) {
    return as_full_ucb1(Algorithm::TwoPassHybrid, instance, horizon, cfg, seed);
  }
  cfg.validate();
  const HybridPlan plan =
      make_hybrid_schedule(instance.size(), memory, horizon, delta_min, b1_override, log_base);
  Rng rng(seed);
  TraceBuilder tb(Algorithm::TwoPassHybrid, instance, memory, horizon);
  const auto& first = plan.schedule.allotted[0];
  for_each_first_pass_window(
      instance, tb.memory(), plan.b1, rng,
      [&](std::size_t j, const std::vector<ArmId>& members, const WindowResult& res, ArmId rec) {
        if (res.pulls_used != first[j - 1]) {
          throw Error(Errc::InvalidArgument, "first-pass window pulls disagree with the schedule");
        }
        tb.record(1, j, members, res.pull_log, rec, first[j - 1]);
      });
  ucb_phase(tb, instance, 2, plan.schedule.allotted[1], cfg, rng);
  return tb.finish();
}

ArmId hybrid_first_pass(const BanditInstance& instance, std::size_t memory, std::uint64_t b1,
                        Rng& rng) {
  ArmMemory mem(memory);
  ArmId last = 0;
  for_each_first_pass_window(instance, mem, b1, rng,
                             [&](std::size_t, const std::vector<ArmId>&, const WindowResult&,
                                 ArmId rec) { last = rec; });
  return last;
}

RunTrace run_algorithm(Algorithm algo, const BanditInstance& instance, std::size_t memory,
                       std::uint64_t horizon, const UcbConfig& cfg, std::uint64_t seed,
                       const HybridOptions& hybrid) {
  switch (algo) {
    case Algorithm::Ucb1:
      return run_ucb1_full(instance, horizon, cfg, seed);
    case Algorithm::UcbM:
      return run_ucb_lam(instance, memory, horizon, cfg, seed, Growth::Double);
    case Algorithm::UcbLam:
      return run_ucb_lam(instance, memory, horizon, cfg, seed, Growth::Square);
    case Algorithm::TwoPassLam:
      return run_two_pass_ucb_lam(instance, memory, horizon, cfg, seed);
    case Algorithm::TwoPassHybrid:
      return run_two_pass_hybrid(instance, memory, horizon, hybrid.delta_min, cfg, seed,
                                 hybrid.b1_override, hybrid.log_base);
  }
  throw Error(Errc::InvalidArgument, "unknown algorithm");
}

}  // namespace armstream
