#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "armstream/core_model.hpp"
#include "armstream/runners.hpp"

namespace armstream {

// Prefix sums of mu* - mu_{a_t} (pseudo-regret from true means).
std::vector<double> cumulative_regret(const RunTrace& trace, const BanditInstance& instance);
double final_regret(const RunTrace& trace, const BanditInstance& instance);

// T * mu* minus the rewards actually collected. Noisy; for plots only.
double realized_regret(const RunTrace& trace, const BanditInstance& instance);

struct WindowRegret {
  std::size_t phase = 0;
  std::size_t subphase = 0;
  double total = 0.0;  // sum of mu* - mu_{a_t}
  double r1 = 0.0;     // b (mu* - mu_rec)
  double r2 = 0.0;     // sum of mu_rec - mu_{a_t}
};

struct RegretBreakdown {
  double total = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  std::vector<WindowRegret> per_window;
};

// Splits every window's regret against the true mean of the arm the window
// recommended onward (its most played arm for UCB windows).
RegretBreakdown bifurcate_regret(const RunTrace& trace, const BanditInstance& instance);

std::size_t pass_count(const RunTrace& trace) noexcept;

struct PresenceCell {
  std::size_t phase = 0;
  std::size_t subphase = 0;
  std::size_t traces = 0;   // traces that reached this window
  std::size_t present = 0;  // A_s = 1
  std::size_t recommended_given_present = 0;
  double p_present = 0.0;
  double se_present = 0.0;
  double p_rec_given_present = 0.0;  // NaN when present == 0
  double se_rec_given_present = 0.0;
};

// Empirical P(A_s) and P(B_s | A_s) for every (w, j) reached by any trace.
std::vector<PresenceCell> presence_frequencies(std::span<const RunTrace> traces,
                                               const BanditInstance& instance);

// Binomial standard error sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::size_t n) noexcept;

}  // namespace armstream
