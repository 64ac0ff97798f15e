#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "armstream/schedulers.hpp"

// Closed-form regret, pass and probability bounds for the limited-memory
// algorithms. "log" is base 2 throughout; natural logs appear only in the
// Hoeffding-derived hybrid quantities.
namespace armstream::bounds {

// A formula value plus whether the formula's precondition holds.
struct Checked {
  double value = 0.0;
  bool valid = true;
};

enum class Side { Upper, Lower };

// A probability bound clamped to [0,1]. An upper bound is vacuous when the raw
// formula is >= 1, a lower bound when it is <= 0.
struct ProbBound {
  double value = 0.0;
  double raw = 0.0;
  bool vacuous = false;
  bool valid = true;
};

ProbBound clamp_probability(double raw, Side side, bool valid = true) noexcept;

// C sqrt(K log T / T); valid when T >= K(K+2).
Checked simple_regret_bound(std::size_t num_arms, std::uint64_t horizon, double c = 1.0);

// 1 + ceil(log2(log_{M(M+2)}(T / h0))). Throws HorizonBelowOnePhase when T < h0 M(M+2).
std::size_t x0_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon);

// 1 - (M-1)/(alpha-1) (b/M - 1)^{2(1-alpha)}; with alpha = 2 this is
// 1 - (M-1)/(b/M - 1)^2.
ProbBound mpa_success_lb(std::size_t memory, double budget, double alpha = 2.0);

struct MpaFailure {
  ProbBound per_arm;    // (1/(alpha-1)) (n/K - 1)^{2(1-alpha)}
  ProbBound union_all;  // (K-1) x per_arm
};
MpaFailure mpa_failure_ub_general(std::size_t num_arms, double n, double alpha = 2.0);

// (M-1) h0 / (b_prev/M - 1)^2
ProbBound best_absent_ub(std::size_t memory, std::size_t h0, double b_prev);

// 2C (M-1) h0 / (b_prev/M - 1)^2 (h0 + 1) sqrt(M log(b_prev) / b_prev)
Checked t1t2_rate_ub(std::size_t memory, std::size_t h0, double b_prev, double c = 1.0);

struct BoundConstants {
  double c = 1.0;
  double b1 = 0.0;
  std::size_t h0 = 0;
  double c0 = 0.0;  // (K-1) M (M+2) / (M-1)
  double c1 = 0.0;  // 2C (M-1) h0^2 (h0+1) sqrt(M)
  double c2 = 0.0;  // C1 M^2 / (sqrt(2) (1 - M/b1)^2)
  double c3 = 0.0;  // C ((K-1)/(M-1)) M log(M(M+2))
  double c4 = 0.0;  // C3 sqrt(1 + 1/b1)
};
BoundConstants bound_constants(std::size_t num_arms, std::size_t memory, double c = 1.0);

// R1 <= C0 + C2 log(log_{b1}(T/h0)); valid when T >= K M^2 (M+2).
Checked r1_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon, double c = 1.0);
// R2 <= C0 + C4 sqrt(log_{b1}(T/h0) T/h0)
Checked r2_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon, double c = 1.0);
Checked total_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon, double c = 1.0);

struct Ucb1Bound {
  double general = 0.0;  // 12 sqrt(T K log T) + 6K
  double tight = 0.0;    // 18 sqrt(T K log T)
  bool tight_applicable = false;  // T >= K/2
};
Ucb1Bound ucb1_regret_bound(std::size_t num_arms, std::uint64_t horizon);

// The two-pass constants are only known to depend on (M, K); they default to 1.
struct TwoPassConstants {
  double c0 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double r1_scale = 1.0;
};
struct TwoPassBound {
  double r2_ub = 0.0;     // C2 + C0 sqrt(T + 0.25 h0) + C1 sqrt(T log(T/h0))
  double r1_order = 0.0;  // r1_scale sqrt(T)
  bool valid = true;
};
TwoPassBound two_pass_bounds(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                             const TwoPassConstants& k = {});
TwoPassBound two_pass_bound_shape(std::size_t h0, double horizon, const TwoPassConstants& k = {});

// f(T) = 1 + delta^2 T^2 / K
double hybrid_f(std::size_t num_arms, double delta_min, double horizon);
// ln(f(T)) / delta^2
double hybrid_b1_opt(std::size_t num_arms, double delta_min, double horizon,
                     LogBase base = LogBase::Natural);
// (K/delta^2) ln f(T) (1 - 1/f(T)) + T / f(T)
double hybrid_regret_bound(std::size_t num_arms, double delta_min, double horizon);
// min(1, K exp(-delta^2 b1))
ProbBound mistake_prob_ub(std::size_t num_arms, double delta_min, double b1);

// K b1 + exp(-b1 delta^2) (T - K b1). Throws BudgetExceedsHorizon unless 0 <= K b1 <= T.
double surrogate_regret(std::size_t num_arms, double delta_min, double horizon, double b1);

struct CauchySum {
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t terms = 0;
};
// lhs = sum_{w=1}^{floor(log_m log_b T)} b^{m^w/2} m^{w/2}
// rhs = sqrt(m/(m-1) log_b(T) (T + T^{1/(m-1)} / b^{m/(m-1)}))
CauchySum cauchy_sum_check(double m, double b, double horizon);

struct BoundEntry {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool valid = true;
  bool vacuous = false;
};

struct BoundParams {
  std::size_t num_arms = 0;
  std::size_t memory = 0;
  std::uint64_t horizon = 0;
  double alpha = 2.0;
  std::optional<double> delta_min;
  double c = 1.0;
  TwoPassConstants two_pass;
};

// Every bound evaluated at `p`, per-phase quantities at each Square-schedule budget.
std::vector<BoundEntry> evaluate_bounds(const BoundParams& p);

}  // namespace armstream::bounds
