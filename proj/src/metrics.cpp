#include "armstream/metrics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "armstream/error.hpp"

namespace armstream {

namespace {

void check_instance(const RunTrace& trace, const BanditInstance& instance) {
  if (trace.num_arms != instance.size()) {
    throw Error(Errc::InstanceMismatch, "trace has K=" + std::to_string(trace.num_arms) +
                                            ", instance has K=" + std::to_string(instance.size()));
  }
  for (const auto& p : trace.pulls) {
    if (p.arm >= instance.size()) {
      throw Error(Errc::InstanceMismatch, "trace pulls arm " + std::to_string(p.arm));
    }
  }
}

}  // namespace

std::vector<double> cumulative_regret(const RunTrace& trace, const BanditInstance& instance) {
  check_instance(trace, instance);
  std::vector<double> out;
  out.reserve(trace.pulls.size());
  double acc = 0.0;
  for (const auto& p : trace.pulls) {
    acc += instance.gaps()[p.arm];
    out.push_back(acc);
  }
  return out;
}

double final_regret(const RunTrace& trace, const BanditInstance& instance) {
  check_instance(trace, instance);
  double acc = 0.0;
  for (const auto& p : trace.pulls) acc += instance.gaps()[p.arm];
  return acc;
}

double realized_regret(const RunTrace& trace, const BanditInstance& instance) {
  check_instance(trace, instance);
  double rewards = 0.0;
  for (const auto& p : trace.pulls) rewards += p.reward;
  return static_cast<double>(trace.pulls.size()) * instance.mu_star() - rewards;
}

RegretBreakdown bifurcate_regret(const RunTrace& trace, const BanditInstance& instance) {
  check_instance(trace, instance);
  if (trace.windows.empty() && !trace.pulls.empty()) {
    throw Error(Errc::MissingDiagnostics, "trace has pulls but no window diagnostics");
  }
  RegretBreakdown out;
  out.per_window.reserve(trace.windows.size());
  const double mu_star = instance.mu_star();
  std::uint64_t covered = 0;
  for (const auto& w : trace.windows) {
    if (w.first_pull + w.pulls > trace.pulls.size()) {
      throw Error(Errc::MissingDiagnostics, "window diagnostics point past the trace");
    }
    const double mu_rec = instance.mean(w.recommended);
    WindowRegret wr{w.phase, w.subphase, 0.0, 0.0, 0.0};
    for (std::uint64_t i = w.first_pull; i < w.first_pull + w.pulls; ++i) {
      const double mu_a = instance.means()[trace.pulls[i].arm];
      wr.total += mu_star - mu_a;
      wr.r2 += mu_rec - mu_a;
    }
    wr.r1 = static_cast<double>(w.pulls) * (mu_star - mu_rec);
    out.total += wr.total;
    out.r1 += wr.r1;
    out.r2 += wr.r2;
    covered += w.pulls;
    out.per_window.push_back(wr);
  }
  if (covered != trace.pulls.size()) {
    throw Error(Errc::MissingDiagnostics, "window diagnostics cover " + std::to_string(covered) +
                                              " of " + std::to_string(trace.pulls.size()) +
                                              " pulls");
  }
  return out;
}

std::size_t pass_count(const RunTrace& trace) noexcept {
  std::size_t passes = 0;
  for (const auto& p : trace.pulls) passes = std::max<std::size_t>(passes, p.phase);
  return passes;
}

double binomial_stderr(double p, std::size_t n) noexcept {
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::vector<PresenceCell> presence_frequencies(std::span<const RunTrace> traces,
                                               const BanditInstance& instance) {
  if (traces.empty()) {
    throw Error(Errc::InvalidArgument, "need at least one trace");
  }
  const RunTrace& ref = traces.front();
  std::map<std::pair<std::size_t, std::size_t>, PresenceCell> cells;
  for (const auto& t : traces) {
    if (t.algorithm != ref.algorithm || t.memory != ref.memory || t.horizon != ref.horizon ||
        t.num_arms != ref.num_arms) {
      throw Error(Errc::HeterogeneousTraces, "traces come from different configurations");
    }
    check_instance(t, instance);
    for (const auto& w : t.windows) {
      auto& c = cells[{w.phase, w.subphase}];
      c.phase = w.phase;
      c.subphase = w.subphase;
      ++c.traces;
      if (w.best_in_memory) {
        ++c.present;
        if (w.best_recommended) ++c.recommended_given_present;
      }
    }
  }
  std::vector<PresenceCell> out;
  out.reserve(cells.size());
  for (auto& [key, c] : cells) {
    c.p_present = static_cast<double>(c.present) / static_cast<double>(c.traces);
    c.se_present = binomial_stderr(c.p_present, c.traces);
    if (c.present > 0) {
      c.p_rec_given_present =
          static_cast<double>(c.recommended_given_present) / static_cast<double>(c.present);
      c.se_rec_given_present = binomial_stderr(c.p_rec_given_present, c.present);
    } else {
      c.p_rec_given_present = std::numeric_limits<double>::quiet_NaN();
      c.se_rec_given_present = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace armstream
