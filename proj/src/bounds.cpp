#include "armstream/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "armstream/error.hpp"

namespace armstream::bounds {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_base(double x, double base) { return std::log(x) / std::log(base); }

template <typename Int>
double as_double(Int v) {
  return static_cast<double>(v);
}

}  // namespace

ProbBound clamp_probability(double raw, Side side, bool valid) noexcept {
  ProbBound p;
  p.raw = raw;
  p.valid = valid;
  if (std::isnan(raw)) {
    p.value = side == Side::Upper ? 1.0 : 0.0;
    p.vacuous = true;
    return p;
  }
  p.value = std::clamp(raw, 0.0, 1.0);
  p.vacuous = side == Side::Upper ? raw >= 1.0 : raw <= 0.0;
  return p;
}

Checked simple_regret_bound(std::size_t num_arms, std::uint64_t horizon, double c) {
  const double k = as_double(num_arms);
  const double t = as_double(horizon);
  Checked out;
  out.valid = horizon >= num_arms * (num_arms + 2);
  out.value = t >= 1.0 ? c * std::sqrt(k * std::log2(t) / t) : kNaN;
  return out;
}

std::size_t x0_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon) {
  const std::size_t h0 = subphase_count(num_arms, memory);
  const std::uint64_t b1 = static_cast<std::uint64_t>(memory) * (memory + 2);
  if (horizon < h0 * b1) {
    throw Error(Errc::HorizonBelowOnePhase, "T = " + std::to_string(horizon) +
                                                " is below one phase h0*b1 = " +
                                                std::to_string(h0 * b1));
  }
  const double inner = log_base(as_double(horizon) / as_double(h0), as_double(b1));
  // Guard against log rounding right at exact powers.
  const double outer = std::max(0.0, std::log2(inner) - 1e-9);
  return 1 + static_cast<std::size_t>(std::ceil(outer));
}

ProbBound mpa_success_lb(std::size_t memory, double budget, double alpha) {
  const double m = as_double(memory);
  const double ratio = budget / m;
  if (!(ratio > 1.0) || !(alpha > 1.0)) {
    return clamp_probability(kNaN, Side::Lower, false);
  }
  const double raw = 1.0 - (m - 1.0) / (alpha - 1.0) * std::pow(ratio - 1.0, 2.0 * (1.0 - alpha));
  return clamp_probability(raw, Side::Lower);
}

MpaFailure mpa_failure_ub_general(std::size_t num_arms, double n, double alpha) {
  const double k = as_double(num_arms);
  const double ratio = n / k;
  MpaFailure out;
  if (!(ratio > 1.0) || !(alpha > 1.0)) {
    out.per_arm = clamp_probability(kNaN, Side::Upper, false);
    out.union_all = out.per_arm;
    return out;
  }
  const double single = std::pow(ratio - 1.0, 2.0 * (1.0 - alpha)) / (alpha - 1.0);
  out.per_arm = clamp_probability(single, Side::Upper);
  out.union_all = clamp_probability((k - 1.0) * single, Side::Upper);
  return out;
}

ProbBound best_absent_ub(std::size_t memory, std::size_t h0, double b_prev) {
  const double m = as_double(memory);
  const double ratio = b_prev / m;
  if (!(ratio > 1.0)) return clamp_probability(kNaN, Side::Upper, false);
  const double raw = (m - 1.0) * as_double(h0) / ((ratio - 1.0) * (ratio - 1.0));
  return clamp_probability(raw, Side::Upper);
}

Checked t1t2_rate_ub(std::size_t memory, std::size_t h0, double b_prev, double c) {
  const double m = as_double(memory);
  const double h = as_double(h0);
  const double ratio = b_prev / m;
  if (!(ratio > 1.0)) return Checked{kNaN, false};
  const double absent = (m - 1.0) * h / ((ratio - 1.0) * (ratio - 1.0));
  return Checked{2.0 * c * absent * (h + 1.0) * std::sqrt(m * std::log2(b_prev) / b_prev), true};
}

BoundConstants bound_constants(std::size_t num_arms, std::size_t memory, double c) {
  BoundConstants k;
  const double kk = as_double(num_arms);
  const double m = as_double(memory);
  k.c = c;
  k.h0 = subphase_count(num_arms, memory);
  const double h = as_double(k.h0);
  k.b1 = m * (m + 2.0);
  k.c0 = (kk - 1.0) * m * (m + 2.0) / (m - 1.0);
  k.c1 = 2.0 * c * (m - 1.0) * h * h * (h + 1.0) * std::sqrt(m);
  k.c2 = k.c1 * m * m / (std::sqrt(2.0) * (1.0 - m / k.b1) * (1.0 - m / k.b1));
  k.c3 = c * ((kk - 1.0) / (m - 1.0)) * m * std::log2(m * (m + 2.0));
  k.c4 = k.c3 * std::sqrt(1.0 + 1.0 / k.b1);
  return k;
}

namespace {
bool regret_bound_valid(std::size_t num_arms, std::size_t memory, std::uint64_t horizon) {
  return horizon >= static_cast<std::uint64_t>(num_arms) * memory * memory * (memory + 2);
}
}  // namespace

Checked r1_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon, double c) {
  const BoundConstants k = bound_constants(num_arms, memory, c);
  const double inner = log_base(as_double(horizon) / as_double(k.h0), k.b1);
  return Checked{k.c0 + k.c2 * std::log2(inner), regret_bound_valid(num_arms, memory, horizon)};
}

Checked r2_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon, double c) {
  const BoundConstants k = bound_constants(num_arms, memory, c);
  const double per_window = as_double(horizon) / as_double(k.h0);
  const double inner = log_base(per_window, k.b1);
  return Checked{k.c0 + k.c4 * std::sqrt(inner * per_window),
                 regret_bound_valid(num_arms, memory, horizon)};
}

Checked total_bound(std::size_t num_arms, std::size_t memory, std::uint64_t horizon, double c) {
  const Checked a = r1_bound(num_arms, memory, horizon, c);
  const Checked b = r2_bound(num_arms, memory, horizon, c);
  return Checked{a.value + b.value, a.valid && b.valid};
}

Ucb1Bound ucb1_regret_bound(std::size_t num_arms, std::uint64_t horizon) {
  const double k = as_double(num_arms);
  const double t = as_double(horizon);
  const double root = std::sqrt(t * k * std::log2(t));
  Ucb1Bound b;
  b.general = 12.0 * root + 6.0 * k;
  b.tight = 18.0 * root;
  b.tight_applicable = 2.0 * t >= k;
  return b;
}

TwoPassBound two_pass_bound_shape(std::size_t h0, double horizon, const TwoPassConstants& k) {
  const double h = as_double(h0);
  TwoPassBound b;
  b.r2_ub = k.c2 + k.c0 * std::sqrt(horizon + 0.25 * h) +
            k.c1 * std::sqrt(horizon * std::log2(horizon / h));
  b.r1_order = k.r1_scale * std::sqrt(horizon);
  b.valid = horizon >= 2.0 * h;
  return b;
}

TwoPassBound two_pass_bounds(std::size_t num_arms, std::size_t memory, std::uint64_t horizon,
                             const TwoPassConstants& k) {
  return two_pass_bound_shape(subphase_count(num_arms, memory), as_double(horizon), k);
}

double hybrid_f(std::size_t num_arms, double delta_min, double horizon) {
  return 1.0 + delta_min * delta_min * horizon * horizon / as_double(num_arms);
}

double hybrid_b1_opt(std::size_t num_arms, double delta_min, double horizon, LogBase base) {
  const double f = hybrid_f(num_arms, delta_min, horizon);
  const double lg = base == LogBase::Natural ? std::log(f) : std::log2(f);
  return lg / (delta_min * delta_min);
}

double hybrid_regret_bound(std::size_t num_arms, double delta_min, double horizon) {
  const double f = hybrid_f(num_arms, delta_min, horizon);
  const double k = as_double(num_arms);
  return k / (delta_min * delta_min) * std::log(f) * (1.0 - 1.0 / f) + horizon / f;
}

ProbBound mistake_prob_ub(std::size_t num_arms, double delta_min, double b1) {
  const double raw = as_double(num_arms) * std::exp(-delta_min * delta_min * b1);
  return clamp_probability(raw, Side::Upper);
}

double surrogate_regret(std::size_t num_arms, double delta_min, double horizon, double b1) {
  const double first = as_double(num_arms) * b1;
  if (b1 < 0.0 || first > horizon) {
    throw Error(Errc::BudgetExceedsHorizon,
                "K*b1 = " + std::to_string(first) + " outside [0, T=" + std::to_string(horizon) + "]");
  }
  return first + std::exp(-b1 * delta_min * delta_min) * (horizon - first);
}

CauchySum cauchy_sum_check(double m, double b, double horizon) {
  if (!(m >= 2.0) || !(b >= 2.0) || !(horizon > b)) {
    throw Error(Errc::DomainError, "need m >= 2, b >= 2 and T > b");
  }
  const double depth = log_base(log_base(horizon, b), m);
  if (depth < 1.0 - 1e-12) {
    throw Error(Errc::DomainError, "log_m log_b T = " + std::to_string(depth) + " < 1");
  }
  CauchySum out;
  out.terms = static_cast<std::size_t>(std::floor(depth + 1e-9));
  for (std::size_t w = 1; w <= out.terms; ++w) {
    const double wd = static_cast<double>(w);
    out.lhs += std::exp(0.5 * std::pow(m, wd) * std::log(b) + 0.5 * wd * std::log(m));
  }
  const double tail = std::exp(std::log(horizon) / (m - 1.0) - m / (m - 1.0) * std::log(b));
  out.rhs = std::sqrt(m / (m - 1.0) * log_base(horizon, b) * (horizon + tail));
  return out;
}

std::vector<BoundEntry> evaluate_bounds(const BoundParams& p) {
  std::vector<BoundEntry> out;
  const double K = static_cast<double>(p.num_arms);
  const double M = static_cast<double>(p.memory);
  const double T = as_double(p.horizon);
  const auto base_inputs = [&] {
    return std::vector<std::pair<std::string, double>>{{"K", K}, {"M", M}, {"T", T}};
  };
  const auto add = [&](std::string name, std::vector<std::pair<std::string, double>> inputs,
                       double value, bool valid, bool vacuous) {
    out.push_back(BoundEntry{std::move(name), std::move(inputs), value, valid, vacuous});
  };

  {
    const Checked s = simple_regret_bound(p.num_arms, p.horizon, p.c);
    auto in = base_inputs();
    in.emplace_back("C", p.c);
    add("simple_regret_bound", in, s.value, s.valid, false);
  }
  {
    const Ucb1Bound u = ucb1_regret_bound(p.num_arms, p.horizon);
    add("ucb1_regret_bound_general", base_inputs(), u.general, true, false);
    add("ucb1_regret_bound_tight", base_inputs(), u.tight, u.tight_applicable, false);
  }
  {
    const MpaFailure f = mpa_failure_ub_general(p.num_arms, T, p.alpha);
    auto in = base_inputs();
    in.emplace_back("alpha", p.alpha);
    add("mpa_failure_ub_per_arm", in, f.per_arm.value, f.per_arm.valid, f.per_arm.vacuous);
    add("mpa_failure_ub_union", in, f.union_all.value, f.union_all.valid, f.union_all.vacuous);
  }

  if (p.memory >= 2 && p.memory < p.num_arms) {
    const std::size_t h0 = subphase_count(p.num_arms, p.memory);
    try {
      add("x0_bound", base_inputs(), static_cast<double>(x0_bound(p.num_arms, p.memory, p.horizon)),
          true, false);
    } catch (const Error&) {
      add("x0_bound", base_inputs(), kNaN, false, false);
    }
    const PhaseSchedule sched =
        make_multipass_schedule(p.num_arms, p.memory, p.horizon, Growth::Square);
    for (std::size_t w = 0; w < sched.budgets.size(); ++w) {
      const double b = static_cast<double>(sched.budgets[w]);
      auto in = base_inputs();
      in.emplace_back("alpha", p.alpha);
      in.emplace_back("b", b);
      const ProbBound s = mpa_success_lb(p.memory, b, p.alpha);
      add("mpa_success_lb", in, s.value, s.valid, s.vacuous);
      if (w == 0) continue;
      const double prev = static_cast<double>(sched.budgets[w - 1]);
      auto pin = base_inputs();
      pin.emplace_back("b", prev);
      const ProbBound a = best_absent_ub(p.memory, h0, prev);
      add("best_absent_ub", pin, a.value, a.valid, a.vacuous);
      pin.emplace_back("C", p.c);
      const Checked r = t1t2_rate_ub(p.memory, h0, prev, p.c);
      add("t1t2_rate_ub", pin, r.value, r.valid, false);
    }
    auto cin = base_inputs();
    cin.emplace_back("C", p.c);
    const Checked r1 = r1_bound(p.num_arms, p.memory, p.horizon, p.c);
    const Checked r2 = r2_bound(p.num_arms, p.memory, p.horizon, p.c);
    const Checked tot = total_bound(p.num_arms, p.memory, p.horizon, p.c);
    add("r1_bound", cin, r1.value, r1.valid, false);
    add("r2_bound", cin, r2.value, r2.valid, false);
    add("total_bound", cin, tot.value, tot.valid, false);
    const TwoPassBound tp = two_pass_bounds(p.num_arms, p.memory, p.horizon, p.two_pass);
    add("two_pass_r2_ub", base_inputs(), tp.r2_ub, tp.valid, false);
    add("two_pass_r1_order", base_inputs(), tp.r1_order, tp.valid, false);
  }

  if (p.delta_min) {
    const double d = *p.delta_min;
    auto in = base_inputs();
    in.emplace_back("delta_min", d);
    const double b1 = hybrid_b1_opt(p.num_arms, d, T);
    add("hybrid_b1_opt", in, b1, true, false);
    add("hybrid_regret_bound", in, hybrid_regret_bound(p.num_arms, d, T), true, false);
    auto bin = in;
    bin.emplace_back("b", std::ceil(b1));
    const ProbBound mp = mistake_prob_ub(p.num_arms, d, std::ceil(b1));
    add("mistake_prob_ub", bin, mp.value, mp.valid, mp.vacuous);
    if (K * std::ceil(b1) <= T) {
      add("surrogate_regret", bin, surrogate_regret(p.num_arms, d, T, std::ceil(b1)), true, false);
    } else {
      add("surrogate_regret", bin, kNaN, false, false);
    }
  }
  return out;
}

}  // namespace armstream::bounds
