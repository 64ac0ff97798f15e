#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "armstream/bounds.hpp"
#include "armstream/core_model.hpp"
#include "armstream/runners.hpp"

namespace armstream {

struct InstanceSpec {
  enum class Kind { Explicit, LinearGrid, TwoArm };
  Kind kind = Kind::LinearGrid;
  std::vector<double> means;          // Explicit
  RewardDist dist = RewardDist::Bernoulli;
  std::size_t num_arms = 30;          // LinearGrid
  std::optional<double> step;         // LinearGrid
  double gap = 0.1;                   // TwoArm

  BanditInstance build() const;
};

struct VerifySpec {
  enum class Check { MpaSuccess, Hoeffding, Presence, Ucb1Regret };
  Check check = Check::MpaSuccess;
  std::vector<std::uint64_t> budgets;  // MpaSuccess: window budgets; Hoeffding: b1 values
};

struct ExperimentConfig {
  InstanceSpec instance;
  std::vector<Algorithm> algorithms{Algorithm::Ucb1, Algorithm::UcbM, Algorithm::UcbLam};
  std::size_t memory = 4;
  std::vector<std::uint64_t> horizons{1'000, 10'000, 100'000, 1'000'000};
  std::size_t reps = 10;
  std::uint64_t base_seed = 1;
  double alpha = 2.0;
  std::optional<double> delta_min;
  std::optional<std::uint64_t> b1_override;
  bool shuffle_arrival = false;
  std::size_t threads = 1;
  std::filesystem::path output_dir = "out";
  std::optional<VerifySpec> verify;

  void validate() const;
};

// Parses the JSON config schema documented in the README. Field problems
// raise ConfigError naming the field.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
// Reads {"means": [...], "dist": "bernoulli"}.
InstanceSpec load_instance_file(const std::filesystem::path& path);

// K=30 linear grid, M=4, ucb1 / ucb_m / ucb_lam, 10 shuffled replications.
ExperimentConfig sec6_preset();

// Seed of replication `rep`, shared by every algorithm and horizon.
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t rep) noexcept;
// Arrival order used by replication `rep` (a pure function of its seed).
BanditInstance arrival_instance(const BanditInstance& base, std::uint64_t rep_seed, bool shuffle);

struct RepRow {
  Algorithm algorithm;
  std::size_t rep;
  std::uint64_t seed;
  std::uint64_t horizon;
  double final_regret;
  std::size_t passes;
  double r1;
  double r2;
  double realized_regret;
};

struct SummaryRow {
  std::string algorithm;
  std::size_t num_arms = 0;
  std::size_t memory = 0;
  std::uint64_t horizon = 0;
  std::size_t reps = 0;
  double mean_final_regret = 0.0;
  double std_final_regret = 0.0;
  double mean_passes = 0.0;
  std::string skipped_reason;  // empty when the cell ran
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  std::vector<SummaryRow> summary;
  std::vector<RepRow> reps;
};

ExperimentResult run_experiment(const ExperimentConfig& config);
// Writes summary.csv, reps.csv, realized.csv and timing.csv into output_dir.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& output_dir);

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
void write_reps_csv(std::ostream& os, const std::vector<RepRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& is);

enum class Verdict { Holds, Violated, Vacuous, Skipped };
std::string_view verdict_name(Verdict v) noexcept;

struct VerifyRow {
  std::string bound;
  std::string cell;
  double bound_value = 0.0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  std::size_t samples = 0;
  Verdict verdict = Verdict::Skipped;
};

// A probability estimate vs an upper or lower bound: violated only when the
// estimate is beyond the bound by more than 3 standard errors.
Verdict judge(double estimate, double stderr_, double bound, bool vacuous, bounds::Side side,
              std::size_t samples);

std::vector<VerifyRow> verify_bounds(const ExperimentConfig& config);
void write_verify_csv(std::ostream& os, const std::vector<VerifyRow>& rows);

struct ScalingFit {
  std::string algorithm;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

// Least-squares slope of ln(mean regret) against ln(T) for each algorithm.
// Cells that were skipped or have non-positive regret are left out; fewer
// than `min_points` remaining raises InsufficientGrid.
std::vector<ScalingFit> scaling_fit(const std::vector<SummaryRow>& rows, std::size_t min_points = 4);

std::string format_double(double v);

}  // namespace armstream
