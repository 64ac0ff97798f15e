#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "armstream/bounds.hpp"
#include "armstream/error.hpp"

using namespace armstream;
using namespace armstream::bounds;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an armstream::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("simple regret bound") {
  const auto s = simple_regret_bound(4, 576);
  CHECK(s.value == doctest::Approx(std::sqrt(4 * std::log2(576.0) / 576)).epsilon(1e-12));
  CHECK(s.value == doctest::Approx(0.2523).epsilon(1e-3));
  CHECK(s.valid);
  CHECK(simple_regret_bound(4, 576, 0.0).value == 0.0);
  CHECK_FALSE(simple_regret_bound(4, 23).valid);
}

TEST_CASE("pass count bound") {
  CHECK(x0_bound(30, 4, 1'000'000) == 3);
  CHECK(x0_bound(30, 4, 240) == 1);
  CHECK(x0_bound(30, 4, 1'000'000'000) == 4);
  CHECK(code_of([] { x0_bound(30, 4, 239); }) == Errc::HorizonBelowOnePhase);
}

TEST_CASE("mpa success lower bound") {
  CHECK(mpa_success_lb(4, 576).value == doctest::Approx(1 - 3.0 / (143.0 * 143.0)).epsilon(1e-14));
  CHECK(mpa_success_lb(4, 24).value == doctest::Approx(0.88).epsilon(1e-14));
  const auto edge = mpa_success_lb(2, 4);
  CHECK(edge.value == 0.0);
  CHECK(edge.vacuous);
  CHECK(mpa_success_lb(2, 576).value == doctest::Approx(1 - 1.0 / (287.0 * 287.0)).epsilon(1e-14));
}

TEST_CASE("general mpa failure bound") {
  const auto f = mpa_failure_ub_general(2, 1000);
  CHECK(f.per_arm.value == doctest::Approx(1.0 / (499.0 * 499.0)).epsilon(1e-12));
  CHECK(f.union_all.value == doctest::Approx(f.per_arm.value));
  const auto g = mpa_failure_ub_general(5, 10000);
  CHECK(g.union_all.value == doctest::Approx(4 * g.per_arm.value).epsilon(1e-14));
  CHECK(mpa_failure_ub_general(2, 1000, 60.0).per_arm.value < 1e-100);
}

TEST_CASE("best arm absent bound") {
  const auto a = best_absent_ub(4, 10, 24);
  CHECK(a.raw == doctest::Approx(1.2));
  CHECK(a.value == 1.0);
  CHECK(a.vacuous);
  CHECK(best_absent_ub(4, 10, 576).value == doctest::Approx(30.0 / 20449.0).epsilon(1e-12));
  const auto z = best_absent_ub(4, 0, 576);
  CHECK(z.value == 0.0);
  CHECK_FALSE(z.vacuous);
}

TEST_CASE("t1 t2 rate bound") {
  CHECK(t1t2_rate_ub(4, 10, 576, 0.0).value == 0.0);
  const auto v = t1t2_rate_ub(4, 10, 576);
  CHECK(v.value > 0.0);
  CHECK(std::isfinite(v.value));
  for (double b = 64; b < 1e7; b *= 2) {
    CHECK(t1t2_rate_ub(4, 10, 2 * b).value < t1t2_rate_ub(4, 10, b).value);
  }
}

TEST_CASE("regret split bounds") {
  const auto r1 = r1_bound(30, 4, 1'000'000);
  const auto r2 = r2_bound(30, 4, 1'000'000);
  const auto tot = total_bound(30, 4, 1'000'000);
  CHECK(tot.value == r1.value + r2.value);
  CHECK(r1.value > 0.0);
  CHECK(std::isfinite(r2.value));
  CHECK(r1.valid);
  CHECK_FALSE(r1_bound(30, 4, 1000).valid);
  // the root-T term dominates as T grows
  const double g1 = r2_bound(30, 4, 100'000'000).value - r2_bound(30, 4, 1'000'000).value;
  const double g2 = r1_bound(30, 4, 100'000'000).value - r1_bound(30, 4, 1'000'000).value;
  CHECK(g1 > g2);
  double lo = INFINITY, hi = 0.0;
  for (double t = 1e4; t <= 1e8; t *= 10) {
    const double ratio =
        total_bound(30, 4, static_cast<std::uint64_t>(t)).value / std::sqrt(t * std::log2(t));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 100.0);
}

TEST_CASE("ucb1 regret bound") {
  const auto b = ucb1_regret_bound(10, 1'000'000);
  CHECK(b.tight == doctest::Approx(18 * std::sqrt(1e7 * std::log2(1e6))).epsilon(1e-12));
  CHECK(b.tight == doctest::Approx(2.54e5).epsilon(5e-3));
  CHECK(b.general == doctest::Approx(12 * std::sqrt(1e7 * std::log2(1e6)) + 60).epsilon(1e-12));
  CHECK(b.tight_applicable);
  CHECK(ucb1_regret_bound(1, 100).tight > 0.0);
}

TEST_CASE("two-pass bound shape") {
  const auto a = two_pass_bound_shape(10, 1e6);
  const auto b = two_pass_bound_shape(10, 2e6);
  const double la = std::sqrt(1e6 * std::log2(1e6 / 10));
  const double lb = std::sqrt(2e6 * std::log2(2e6 / 10));
  CHECK(lb / la == doctest::Approx(std::sqrt(2.0) * std::sqrt(1 + 1 / std::log2(1e5))).epsilon(1e-12));
  CHECK(b.r2_ub > a.r2_ub);
  CHECK(a.r1_order == doctest::Approx(1000.0));
  const auto one = two_pass_bound_shape(1, 1e6);
  CHECK(one.r2_ub ==
        doctest::Approx(1 + std::sqrt(1e6 + 0.25) + std::sqrt(1e6 * std::log2(1e6))).epsilon(1e-12));
}

TEST_CASE("hybrid quantities") {
  CHECK(hybrid_b1_opt(10, 0.1, 1e5) == doctest::Approx(1611.8).epsilon(1e-4));
  CHECK(hybrid_regret_bound(10, 0.1, 1e5) == doctest::Approx(1.61e4).epsilon(5e-3));
  CHECK(std::ceil(hybrid_b1_opt(2, 1.0, 100)) == 9);
  CHECK(hybrid_regret_bound(10, 1e-12, 1e5) == doctest::Approx(1e5).epsilon(1e-6));
  const auto m = mistake_prob_ub(10, 0.1, 1612);
  CHECK(m.value == doctest::Approx(10 * std::exp(-16.12)).epsilon(1e-12));
  CHECK(m.value == doctest::Approx(1.0e-6).epsilon(0.01));
  CHECK(mistake_prob_ub(10, 0.1, 500).value == doctest::Approx(10 * std::exp(-5.0)));
  CHECK(mistake_prob_ub(10, 0.1, 10).vacuous);
  CHECK(hybrid_b1_opt(10, 0.1, 1e5, LogBase::Base2) ==
        doctest::Approx(std::log2(1 + 1e7) / 0.01));
}

TEST_CASE("surrogate regret") {
  CHECK(surrogate_regret(10, 0.1, 1e5, 0) == 1e5);
  CHECK(surrogate_regret(10, 0.1, 1e5, 1e4) == doctest::Approx(1e5));
  CHECK(code_of([] { surrogate_regret(10, 0.1, 1e5, 1e4 + 1); }) == Errc::BudgetExceedsHorizon);
}

TEST_CASE("cauchy sum check") {
  const auto a = cauchy_sum_check(2, 2, 16);
  CHECK(a.terms == 2);
  CHECK(a.lhs == doctest::Approx(2 * std::sqrt(2.0) + 8).epsilon(1e-12));
  CHECK(a.rhs == doctest::Approx(std::sqrt(160.0)).epsilon(1e-12));
  CHECK(a.lhs <= a.rhs);
  const auto b = cauchy_sum_check(2, 24, std::pow(24.0, 8));
  CHECK(b.terms == 3);
  // direct summation oracle
  double lhs = 0.0;
  for (int w = 1; w <= 3; ++w) lhs += std::pow(24.0, std::pow(2.0, w) / 2) * std::pow(2.0, w / 2.0);
  CHECK(b.lhs == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(b.lhs <= b.rhs);
  CHECK(code_of([] { cauchy_sum_check(2, 24, 500); }) == Errc::DomainError);
}

TEST_CASE("bound table") {
  BoundParams p;
  p.num_arms = 30;
  p.memory = 4;
  p.horizon = 1'000'000;
  p.delta_min = 0.98 / 29;
  const auto rows = evaluate_bounds(p);
  std::size_t mpa = 0;
  bool saw_vacuous_absent = false;
  for (const auto& r : rows) {
    if (r.name == "mpa_success_lb") ++mpa;
    if (r.name == "best_absent_ub" && r.vacuous) saw_vacuous_absent = true;
    if (r.vacuous) CHECK((r.value == 0.0 || r.value == 1.0));
  }
  CHECK(mpa == 3);
  CHECK(saw_vacuous_absent);
}

TEST_CASE("probability clamping") {
  CHECK(clamp_probability(1.3, Side::Upper).value == 1.0);
  CHECK(clamp_probability(1.3, Side::Upper).vacuous);
  CHECK(clamp_probability(-0.2, Side::Lower).value == 0.0);
  CHECK(clamp_probability(-0.2, Side::Lower).vacuous);
  CHECK_FALSE(clamp_probability(0.3, Side::Upper).vacuous);
  CHECK(clamp_probability(std::nan(""), Side::Upper).vacuous);
}
