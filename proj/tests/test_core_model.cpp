#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <set>

#include "armstream/core_model.hpp"
#include "armstream/error.hpp"

using namespace armstream;

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

TEST_CASE("instance: means, gaps and delta_min") {
  const auto inst = make_instance({0.9, 0.8});
  CHECK(inst.mu_star() == 0.9);
  CHECK(inst.gaps()[0] == 0.0);
  CHECK(inst.gaps()[1] == doctest::Approx(0.1).epsilon(1e-12));
  REQUIRE(inst.delta_min());
  CHECK(*inst.delta_min() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(inst.best_arm() == 0);
  CHECK(inst.has_unique_best());
}

TEST_CASE("instance: all-equal means have no positive gap") {
  const auto inst = make_instance({0.5, 0.5, 0.5});
  CHECK(inst.mu_star() == 0.5);
  for (double g : inst.gaps()) CHECK(g == 0.0);
  CHECK_FALSE(inst.delta_min().has_value());
  CHECK_FALSE(inst.has_unique_best());
  CHECK(inst.is_optimal(2));
}

TEST_CASE("linear grid: delta_min is the step") {
  const auto k30 = linear_grid(30);
  CHECK(k30.size() == 30);
  CHECK(k30.mean(0) == doctest::Approx(0.99));
  CHECK(*k30.delta_min() == doctest::Approx(0.98 / 29).epsilon(1e-9));
  CHECK(k30.mean(29) >= 0.0);
  const auto k10 = linear_grid(10);
  CHECK(*k10.delta_min() == doctest::Approx(0.1).epsilon(1e-9));
  for (double m : k10.means()) CHECK((m >= 0.0 && m <= 1.0));
  CHECK(code_of([] { linear_grid(10, 0.2); }) == Errc::MeanOutOfRange);
}

TEST_CASE("two_arm preset") {
  const auto inst = two_arm(0.1);
  CHECK(inst.mean(0) == 0.9);
  CHECK(inst.mean(1) == doctest::Approx(0.8));
}

TEST_CASE("instance validation") {
  CHECK(code_of([] { make_instance({0.5}); }) == Errc::TooFewArms);
  CHECK(code_of([] { make_instance({0.5, 1.2}); }) == Errc::MeanOutOfRange);
  CHECK(code_of([] { make_instance({0.5, -0.1}); }) == Errc::MeanOutOfRange);
  CHECK(code_of([] { make_instance({0.5, std::nan("")}); }) == Errc::MeanOutOfRange);
  const auto inst = make_instance({0.5, 0.4});
  CHECK(code_of([&] { (void)inst.mean(2); }) == Errc::ArmIndexOutOfRange);
}

TEST_CASE("permuted keeps the multiset of means") {
  const auto inst = make_instance({0.1, 0.2, 0.3});
  const std::vector<std::size_t> order{2, 0, 1};
  const auto p = inst.permuted(order);
  CHECK(p.mean(0) == 0.3);
  CHECK(p.mean(1) == 0.1);
  CHECK(p.mean(2) == 0.2);
  CHECK(p.best_arm() == 0);
}

TEST_CASE("rng: counter based and reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(a.draws() == 100);
  // n-th output is mix(seed + n * golden) with n counted from 1
  Rng c(7);
  CHECK(c.next() == splitmix64_mix(7 + 0x9E3779B97F4A7C15ULL));
  CHECK(Rng::derive(1, 0) != Rng::derive(1, 1));
  CHECK(Rng::derive(1, 3) == Rng::derive(1, 3));
  Rng u(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}

TEST_CASE("random permutation is a permutation") {
  Rng rng(3);
  auto p = random_permutation(50, rng);
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(50);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted == iota);
  CHECK(p != iota);
}

TEST_CASE("sample_reward: degenerate Bernoulli arms") {
  const auto inst = make_instance({1.0, 0.0});
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(sample_reward(inst, 0, rng) == 1.0);
    CHECK(sample_reward(inst, 1, rng) == 0.0);
  }
  CHECK(rng.draws() == 2000);
}

TEST_CASE("sample_reward: empirical mean within CLT tolerance") {
  const auto inst = make_instance({0.5, 0.5});
  Rng rng(42);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_reward(inst, 0, rng);
  CHECK(std::abs(sum / n - 0.5) <= 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("sample_reward: bounded uniform stays in range with the right mean") {
  const auto inst = make_instance({0.8, 0.3}, RewardDist::BoundedUniform);
  Rng rng(9);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = sample_reward(inst, 0, rng);
    CHECK((r >= 0.6 && r <= 1.0));
    sum += r;
  }
  // variance of U[0.6, 1.0] is 0.4^2 / 12
  CHECK(std::abs(sum / n - 0.8) <= 3.0 * std::sqrt(0.16 / 12.0 / n));
}

TEST_CASE("update_stats") {
  auto s = update_stats(unsampled(0), 0.7);
  CHECK(s.pulls == 1);
  CHECK(s.mean_estimate == doctest::Approx(0.7));
  ArmStats one{0, 1, 1.0};
  CHECK(update_stats(one, 0.0).mean_estimate == 0.5);
  CHECK(code_of([] { update_stats(unsampled(0), 1.5); }) == Errc::RewardOutOfRange);
  CHECK(std::isnan(unsampled(3).mean_estimate));
}

TEST_CASE("update_stats folds to the batch average") {
  Rng rng(123);
  std::vector<double> xs(5000);
  for (auto& x : xs) x = rng.uniform();
  ArmStats s = unsampled(0);
  for (double x : xs) s = update_stats(s, x);
  const double batch = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  CHECK(std::abs(s.mean_estimate - batch) < 1e-12);
  CHECK(s.pulls == xs.size());
}

TEST_CASE("arm memory enforces its capacity") {
  ArmMemory mem(2);
  mem.admit(0);
  mem.admit(1);
  CHECK(mem.size() == 2);
  CHECK(code_of([&] { mem.admit(2); }) == Errc::MemoryCapExceeded);
  mem.set_carried(1);
  mem.evict_all_but_carried();
  CHECK(mem.size() == 1);
  CHECK(mem.contains(1));
  CHECK_FALSE(mem.contains(0));
  mem.admit(2);
  CHECK(mem.peak() == 2);
  CHECK(code_of([&] { mem.set_carried(0); }) == Errc::ArmIndexOutOfRange);
  CHECK(code_of([] { ArmMemory bad(0); }) == Errc::MemoryTooSmall);
}
