// armstream: run limited-memory bandit experiments, evaluate bounds, and
// check bounds against Monte-Carlo estimates.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "armstream/bounds.hpp"
#include "armstream/error.hpp"
#include "armstream/harness.hpp"

namespace {

using namespace armstream;

std::ostream* open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw Error(Errc::ConfigError, "cannot write " + path);
  return &file;
}

void print_summary(const std::vector<SummaryRow>& rows) {
  for (const auto& r : rows) {
    std::cerr << r.algorithm << " T=" << r.horizon;
    if (r.skipped_reason.empty()) {
      std::cerr << " regret=" << format_double(r.mean_final_regret)
                << " sd=" << format_double(r.std_final_regret)
                << " passes=" << format_double(r.mean_passes);
    } else {
      std::cerr << " skipped (" << r.skipped_reason << ")";
    }
    std::cerr << " [" << format_double(r.wall_seconds) << "s]\n";
  }
}

int cmd_run(const ExperimentConfig& cfg) {
  const ExperimentResult res = run_experiment(cfg);
  write_experiment(res, cfg.output_dir);
  print_summary(res.summary);
  std::cerr << "wrote " << cfg.output_dir.string() << "\n";
  return 0;
}

std::string lookup(const bounds::BoundEntry& e, const std::string& key) {
  for (const auto& [k, v] : e.inputs) {
    if (k == key) return format_double(v);
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limited-memory streaming bandit simulations and bounds"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);

  std::string preset = "sec6";
  std::vector<std::uint64_t> cmp_horizons;
  std::size_t cmp_reps = 10;
  std::uint64_t cmp_seed = 1;
  std::size_t cmp_threads = 1;
  std::string cmp_out = "out/sec6";
  auto* compare = app.add_subcommand("compare", "Run a named comparison preset");
  compare->add_option("--preset", preset, "preset name")->check(CLI::IsMember({"sec6"}));
  compare->add_option("--T", cmp_horizons, "horizons")->expected(1, -1);
  compare->add_option("--reps", cmp_reps, "replications")->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp_seed, "base seed");
  compare->add_option("--threads", cmp_threads, "worker threads")->check(CLI::PositiveNumber);
  compare->add_option("--out", cmp_out, "output directory");

  bounds::BoundParams bp;
  std::optional<double> delta_min;
  std::string bounds_out = "-";
  auto* bnd = app.add_subcommand("bounds", "Evaluate every closed-form bound at one point");
  bnd->add_option("--K", bp.num_arms, "number of arms")->required();
  bnd->add_option("--M", bp.memory, "memory (arms)")->required();
  bnd->add_option("--T", bp.horizon, "horizon")->required();
  bnd->add_option("--alpha", bp.alpha, "UCB exploration parameter");
  bnd->add_option("--delta-min", delta_min, "smallest gap (hybrid bounds)");
  bnd->add_option("--C", bp.c, "symbolic constant C");
  bnd->add_option("--out", bounds_out, "output CSV (- for stdout)");

  std::string verify_path;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Compare Monte-Carlo estimates against bounds");
  verify->add_option("--config", verify_path, "config file")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", verify_out, "output CSV (default <output_dir>/verify.csv)");

  std::string fit_path;
  std::size_t fit_min = 4;
  auto* fit = app.add_subcommand("fit", "Log-log regret slope per algorithm from a summary CSV");
  fit->add_option("--summary", fit_path, "summary.csv")->required()->check(CLI::ExistingFile);
  fit->add_option("--min-points", fit_min, "minimum usable horizons");
  std::vector<std::string> fit_algos;
  fit->add_option("--algorithms", fit_algos, "only fit these algorithms")->expected(1, -1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(load_config(config_path));

    if (*compare) {
      ExperimentConfig cfg = sec6_preset();
      if (!cmp_horizons.empty()) cfg.horizons = cmp_horizons;
      cfg.reps = cmp_reps;
      cfg.base_seed = cmp_seed;
      cfg.threads = cmp_threads;
      cfg.output_dir = cmp_out;
      return cmd_run(cfg);
    }

    if (*bnd) {
      bp.delta_min = delta_min;
      const auto entries = bounds::evaluate_bounds(bp);
      std::ofstream file;
      std::ostream& os = *open_output(bounds_out, file);
      os << "bound_name,K,M,T,alpha,delta_min,C,b,value,valid,vacuous\n";
      for (const auto& e : entries) {
        os << e.name << ',' << bp.num_arms << ',' << bp.memory << ',' << bp.horizon << ','
           << format_double(bp.alpha) << ',' << (delta_min ? format_double(*delta_min) : "")
           << ',' << format_double(bp.c) << ',' << lookup(e, "b") << ','
           << format_double(e.value) << ',' << (e.valid ? 1 : 0) << ',' << (e.vacuous ? 1 : 0)
           << '\n';
      }
      return 0;
    }

    if (*verify) {
      const ExperimentConfig cfg = load_config(verify_path);
      const auto rows = verify_bounds(cfg);
      std::filesystem::path out = verify_out;
      if (out.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        out = cfg.output_dir / "verify.csv";
      }
      std::ofstream file;
      write_verify_csv(*open_output(out.string(), file), rows);
      std::size_t violated = 0;
      for (const auto& r : rows) violated += r.verdict == Verdict::Violated;
      std::cerr << rows.size() << " rows, " << violated << " violated\n";
      return violated == 0 ? 0 : 3;
    }

    if (*fit) {
      std::ifstream in(fit_path);
      auto rows = read_summary_csv(in);
      if (!fit_algos.empty()) {
        std::erase_if(rows, [&](const SummaryRow& r) {
          return std::find(fit_algos.begin(), fit_algos.end(), r.algorithm) == fit_algos.end();
        });
      }
      std::cout << "algorithm,slope,intercept,points\n";
      for (const auto& f : scaling_fit(rows, fit_min)) {
        std::cout << f.algorithm << ',' << format_double(f.slope) << ','
                  << format_double(f.intercept) << ',' << f.points << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
