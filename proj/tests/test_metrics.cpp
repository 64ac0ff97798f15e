#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "armstream/error.hpp"
#include "armstream/metrics.hpp"

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

RunTrace hand_trace(std::size_t k, const std::vector<ArmId>& arms) {
  RunTrace tr;
  tr.num_arms = k;
  tr.memory = k;
  tr.horizon = arms.size();
  for (std::size_t i = 0; i < arms.size(); ++i) {
    tr.pulls.push_back(PullEvent{i + 1, arms[i], 0.0, 1, 1});
  }
  return tr;
}

}  // namespace

TEST_CASE("cumulative regret on hand traces") {
  const auto eq = make_instance({0.5, 0.5});
  for (double r : cumulative_regret(hand_trace(2, {0, 1, 1, 0}), eq)) CHECK(r == 0.0);

  const auto inst = make_instance({0.75, 0.25});
  const auto worst = hand_trace(2, std::vector<ArmId>(10, 1));
  CHECK(final_regret(worst, inst) == doctest::Approx(5.0).epsilon(1e-12));
  const auto c = cumulative_regret(worst, inst);
  REQUIRE(c.size() == 10);
  CHECK(c[3] == doctest::Approx(2.0));
}

TEST_CASE("cumulative regret matches a per-pull re-summation") {
  const auto inst = linear_grid(30);
  const auto tr = run_ucb_lam(inst, 4, 20'000, UcbConfig{}, 77);
  const auto c = cumulative_regret(tr, inst);
  double acc = 0.0;
  for (std::size_t i = 0; i < tr.pulls.size(); ++i) {
    acc += inst.means()[inst.best_arm()] - inst.means()[tr.pulls[i].arm];
    CHECK(std::abs(c[i] - acc) < 1e-9);
  }
}

TEST_CASE("realized regret uses the collected rewards") {
  const auto inst = make_instance({0.9, 0.1});
  auto tr = hand_trace(2, {0, 1});
  tr.pulls[0].reward = 1.0;
  tr.pulls[1].reward = 0.0;
  CHECK(realized_regret(tr, inst) == doctest::Approx(2 * 0.9 - 1.0));
}

TEST_CASE("bifurcation: total = r1 + r2 on real traces") {
  const auto inst = linear_grid(20);
  HybridOptions h;
  h.delta_min = inst.delta_min();
  h.b1_override = 40;
  for (Algorithm a : {Algorithm::Ucb1, Algorithm::UcbM, Algorithm::UcbLam, Algorithm::TwoPassLam,
                      Algorithm::TwoPassHybrid}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto tr = run_algorithm(a, inst, 3, 30'000, UcbConfig{}, seed, h);
      const auto br = bifurcate_regret(tr, inst);
      CHECK(std::abs(br.total - (br.r1 + br.r2)) < 1e-9);
      CHECK(br.total == doctest::Approx(final_regret(tr, inst)).epsilon(1e-12));
      for (const auto& w : br.per_window) CHECK(std::abs(w.total - w.r1 - w.r2) < 1e-9);
    }
  }
}

TEST_CASE("bifurcation: window that only pulls its recommendation has no r2") {
  const auto inst = make_instance({0.9, 0.6, 0.3});
  auto tr = hand_trace(3, {1, 1, 1, 0, 0});
  tr.windows.push_back(WindowDiagnostic{1, 1, {1, 2}, 1, false, false, 3, 3, 0});
  tr.windows.push_back(WindowDiagnostic{1, 2, {0, 1}, 0, true, true, 2, 2, 3});
  const auto br = bifurcate_regret(tr, inst);
  CHECK(br.per_window[0].r2 == 0.0);
  CHECK(br.per_window[0].r1 == doctest::Approx(3 * 0.3));
  CHECK(br.per_window[1].r1 == 0.0);
  CHECK(br.per_window[1].r2 == 0.0);
  tr.windows.clear();
  CHECK(code_of([&] { bifurcate_regret(tr, inst); }) == Errc::MissingDiagnostics);
}

TEST_CASE("pass counts") {
  const auto inst = linear_grid(30);
  CHECK(pass_count(run_ucb1_full(inst, 1000, UcbConfig{}, 1)) == 1);
  CHECK(pass_count(run_two_pass_ucb_lam(inst, 4, 5000, UcbConfig{}, 1)) == 2);
  CHECK(pass_count(run_ucb_lam(inst, 4, 1'000'000, UcbConfig{}, 1)) == 3);
}

TEST_CASE("presence: best arm in the first window and always recommended") {
  // arm 0 is far better and sits in every first window as the entry arm
  std::vector<double> means(8, 0.1);
  means[0] = 0.99;
  const auto inst = make_instance(means);
  std::vector<RunTrace> traces;
  for (std::uint64_t s = 0; s < 20; ++s) traces.push_back(run_ucb_lam(inst, 3, 5000, UcbConfig{}, s));
  const auto cells = presence_frequencies(traces, inst);
  REQUIRE_FALSE(cells.empty());
  for (const auto& c : cells) {
    if (c.phase >= 2) {
      CHECK(c.p_present == 1.0);
      CHECK(c.p_rec_given_present == 1.0);
    }
  }
  CHECK(cells.front().phase == 1);
  CHECK(cells.front().p_present == 1.0);
}

TEST_CASE("presence: heterogeneous traces are rejected") {
  const auto inst = linear_grid(8);
  std::vector<RunTrace> traces{run_ucb_lam(inst, 3, 2000, UcbConfig{}, 1),
                               run_ucb_lam(inst, 3, 3000, UcbConfig{}, 1)};
  CHECK(code_of([&] { presence_frequencies(traces, inst); }) == Errc::HeterogeneousTraces);
  std::vector<RunTrace> one{traces[0]};
  CHECK(code_of([&] { presence_frequencies(one, linear_grid(9)); }) == Errc::InstanceMismatch);
}

TEST_CASE("binomial stderr") {
  CHECK(binomial_stderr(0.5, 100) == doctest::Approx(0.05));
  CHECK(binomial_stderr(0.0, 100) == 0.0);
}
