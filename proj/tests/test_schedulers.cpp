#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "armstream/error.hpp"
#include "armstream/schedulers.hpp"

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

// Walks one phase the way the runners do, carrying `pick(members)` onward.
std::vector<std::vector<ArmId>> walk_phase(std::size_t k, std::size_t m, ArmId entry,
                                           const std::function<ArmId(const std::vector<ArmId>&)>& pick) {
  std::vector<std::vector<ArmId>> windows;
  std::size_t cursor = 0;
  ArmId carried = entry;
  for (std::size_t j = 0; j < subphase_count(k, m); ++j) {
    const auto w = next_window(cursor, k, m, carried, entry);
    windows.push_back(w.members);
    carried = pick(w.members);
    cursor = w.cursor_after;
    if (cursor >= k) break;
  }
  return windows;
}

}  // namespace

TEST_CASE("subphase counts") {
  CHECK(subphase_count(30, 4) == 10);
  CHECK(subphase_count(5, 3) == 2);
  CHECK(subphase_count(3, 2) == 2);
  CHECK(code_of([] { subphase_count(5, 1); }) == Errc::MemoryTooSmall);
  CHECK(code_of([] { subphase_count(5, 5); }) == Errc::MemoryCoversAll);
}

TEST_CASE("next_window examples (0-based arms)") {
  // carried arm already inside the raw range
  auto w = next_window(0, 5, 3, 0);
  CHECK(w.members == std::vector<ArmId>{0, 1, 2});
  CHECK(w.cursor_after == 3);
  // carried arm from outside the raw range goes first
  w = next_window(0, 5, 3, 3);
  CHECK(w.members == std::vector<ArmId>{3, 0, 1});
  CHECK(w.cursor_after == 2);
  // tail window: the carried one plus the last two arms
  w = next_window(3, 5, 3, 1);
  CHECK(w.members == std::vector<ArmId>{1, 3, 4});
  CHECK(w.cursor_after == 5);
}

TEST_CASE("next_window skips the arm that entered the phase") {
  // entry arm 4 is resident and is not streamed a second time
  const auto w1 = next_window(0, 5, 3, 4, 4);
  CHECK(w1.members == std::vector<ArmId>{4, 0, 1});
  const auto w2 = next_window(w1.cursor_after, 5, 3, 1, 4);
  CHECK(w2.members == std::vector<ArmId>{1, 2, 3});
  CHECK(w2.cursor_after == 5);
  CHECK(code_of([] { next_window(5, 5, 3, 0); }) == Errc::CursorOutOfRange);
}

TEST_CASE("every phase covers all arms in exactly h0 windows") {
  for (std::size_t k = 3; k <= 20; ++k) {
    for (std::size_t m = 2; m < k; ++m) {
      for (ArmId entry = 0; entry < k; ++entry) {
        for (int policy = 0; policy < 3; ++policy) {
          const auto pick = [&](const std::vector<ArmId>& mem) {
            if (policy == 0) return mem.front();
            if (policy == 1) return mem.back();
            return mem[mem.size() / 2];
          };
          const auto windows = walk_phase(k, m, entry, pick);
          CHECK(windows.size() == subphase_count(k, m));
          std::set<ArmId> seen;
          for (const auto& w : windows) {
            CHECK(w.size() <= m);
            CHECK(std::set<ArmId>(w.begin(), w.end()).size() == w.size());
            seen.insert(w.begin(), w.end());
          }
          CHECK(seen.size() == k);
        }
      }
    }
  }
}

TEST_CASE("square schedule at the comparison setting") {
  const auto s = make_multipass_schedule(30, 4, 1'000'000, Growth::Square);
  CHECK(s.h0 == 10);
  CHECK(s.budgets == std::vector<std::uint64_t>{24, 576, 331776});
  CHECK(s.phases() == 3);
  CHECK(s.total() == 1'000'000);
  std::uint64_t phase3 = 0;
  for (auto b : s.allotted[2]) phase3 += b;
  CHECK(phase3 == 994'000);
  CHECK(s.truncation.phase == 3);
  CHECK(s.truncation.subphase == 3);
  CHECK(s.truncation.pulls == 994'000 - 2 * 331776);
}

TEST_CASE("one full phase when T = h0 * b1") {
  const auto s = make_multipass_schedule(30, 4, 240, Growth::Square);
  CHECK(s.phases() == 1);
  CHECK(s.total() == 240);
  for (auto b : s.allotted[0]) CHECK(b == 24);
}

TEST_CASE("double schedule phase count") {
  const auto s = make_multipass_schedule(30, 4, 1'000'000, Growth::Double);
  CHECK(s.total() == 1'000'000);
  CHECK(s.phases() >= 12);
  CHECK(s.phases() <= 17);
  for (std::size_t w = 1; w < s.budgets.size(); ++w) CHECK(s.budgets[w] == 2 * s.budgets[w - 1]);
}

TEST_CASE("schedules never allot empty windows and sum to T") {
  for (std::size_t k : {3u, 7u, 12u, 30u}) {
    for (std::size_t m = 2; m < k; m += 2) {
      for (std::uint64_t t : {1ull, 5ull, 99ull, 1000ull, 65537ull}) {
        for (Growth g : {Growth::Square, Growth::Double}) {
          const auto s = make_multipass_schedule(k, m, t, g);
          CHECK(s.total() == t);
          for (const auto& phase : s.allotted) {
            for (auto b : phase) CHECK(b > 0);
          }
        }
      }
    }
  }
}

TEST_CASE("two-pass schedule examples") {
  const auto p = make_two_pass_schedule(30, 4, 1000);
  CHECK(p.b1_real == doctest::Approx((std::sqrt(401.0) - 1) / 2).epsilon(1e-12));
  CHECK(p.b1 == 9);
  CHECK(p.b2 == 91);
  CHECK(p.residue == 0);
  CHECK(p.schedule.total() == 1000);
  CHECK(p.schedule.phases() == 2);

  const auto q = make_two_pass_schedule(3, 2, 40);
  CHECK(q.b1 == 4);
  CHECK(q.b2 == 16);
  CHECK(q.residue == 0);
  CHECK(q.schedule.allotted ==
        std::vector<std::vector<std::uint64_t>>{{4, 4}, {16, 16}});
}

TEST_CASE("two-pass reals satisfy the defining identities") {
  for (std::size_t h0 = 1; h0 < 20; ++h0) {
    for (double t : {100.0, 1e4, 12345.0, 1e6}) {
      const double x = (std::sqrt(1.0 + 4.0 * t / h0) - 1.0) / 2.0;
      CHECK(h0 * (x + x * x) == doctest::Approx(t).epsilon(1e-10));
    }
  }
  const auto p = make_two_pass_schedule(30, 4, 12345);
  CHECK(p.b2_real == doctest::Approx(p.b1_real * p.b1_real).epsilon(1e-12));
  CHECK(10 * (p.b1_real + p.b2_real) == doctest::Approx(12345.0).epsilon(1e-10));
  CHECK(p.schedule.total() == 12345);
  CHECK(code_of([] { make_two_pass_schedule(30, 4, 19); }) == Errc::HorizonTooSmall);
}

TEST_CASE("hybrid schedule examples") {
  const auto h = make_hybrid_schedule(10, 4, 100'000, 0.1);
  CHECK(h.b1 == 1612);
  CHECK(h.first_pass_pulls == 16'120);
  CHECK(h.schedule.total() == 100'000);
  std::uint64_t second = 0;
  for (auto b : h.schedule.allotted[1]) second += b;
  CHECK(second == 83'880);

  CHECK(make_hybrid_schedule(10, 4, 100'000, 0.1, 50).b1 == 50);
  CHECK(make_hybrid_schedule(10, 4, 100'000, std::nullopt, 50).b1 == 50);
}

TEST_CASE("hybrid schedule errors") {
  CHECK(code_of([] { make_hybrid_schedule(10, 4, 100'000, std::nullopt); }) ==
        Errc::MissingDeltaMin);
  CHECK(code_of([] { make_hybrid_schedule(10, 4, 1000, 0.1); }) ==
        Errc::HorizonTooSmallForHybrid);
  CHECK(code_of([] { make_hybrid_schedule(10, 4, 1000, 0.0); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_hybrid_schedule(10, 4, 1000, 0.1, 0); }) == Errc::InvalidArgument);
}

TEST_CASE("fresh arms per window") {
  CHECK(fresh_arms_per_window(5, 3) == std::vector<std::size_t>{3, 2});
  const auto f = fresh_arms_per_window(30, 4);
  CHECK(f.size() == 10);
  std::size_t sum = 0;
  for (auto x : f) sum += x;
  CHECK(sum == 30);
}
