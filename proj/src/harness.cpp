#include "armstream/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "armstream/error.hpp"
#include "armstream/metrics.hpp"
#include "armstream/schedulers.hpp"
#include "armstream/strategies.hpp"

namespace armstream {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw Error(Errc::ConfigError, "field '" + field + "': " + msg);
}

template <typename T>
T get_field(const json& j, const std::string& field) {
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    config_error(field, e.what());
  }
}

RewardDist parse_dist(const std::string& name, const std::string& field) {
  if (name == "bernoulli") return RewardDist::Bernoulli;
  if (name == "bounded_uniform") return RewardDist::BoundedUniform;
  config_error(field, "unknown distribution '" + name + "'");
}

InstanceSpec parse_instance(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) config_error("instance", "expected an object");
  InstanceSpec spec;
  if (j.contains("file")) {
    std::filesystem::path p = get_field<std::string>(j, "file");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_instance_file(p);
  }
  if (j.contains("means")) {
    spec.kind = InstanceSpec::Kind::Explicit;
    spec.means = get_field<std::vector<double>>(j, "means");
    spec.dist = parse_dist(j.value("dist", std::string("bernoulli")), "instance.dist");
    return spec;
  }
  const std::string preset = j.contains("preset") ? get_field<std::string>(j, "preset") : "";
  spec.dist = parse_dist(j.value("dist", std::string("bernoulli")), "instance.dist");
  if (preset == "linear_grid") {
    spec.kind = InstanceSpec::Kind::LinearGrid;
    spec.num_arms = get_field<std::size_t>(j, "K");
    if (j.contains("step")) spec.step = get_field<double>(j, "step");
  } else if (preset == "two_arm") {
    spec.kind = InstanceSpec::Kind::TwoArm;
    spec.gap = get_field<double>(j, "gap");
  } else {
    config_error("instance", "need 'means', 'file' or preset linear_grid / two_arm");
  }
  return spec;
}

VerifySpec parse_verify(const json& j) {
  VerifySpec v;
  const std::string check = get_field<std::string>(j, "check");
  if (check == "mpa_success") {
    v.check = VerifySpec::Check::MpaSuccess;
    v.budgets = get_field<std::vector<std::uint64_t>>(j, "budgets");
  } else if (check == "hoeffding") {
    v.check = VerifySpec::Check::Hoeffding;
    v.budgets = get_field<std::vector<std::uint64_t>>(j, "b1");
  } else if (check == "presence") {
    v.check = VerifySpec::Check::Presence;
  } else if (check == "ucb1_regret") {
    v.check = VerifySpec::Check::Ucb1Regret;
  } else {
    config_error("verify.check", "unknown check '" + check + "'");
  }
  return v;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
// written by index so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

const char* const kSummaryHeader =
    "algorithm,K,M,T,reps,mean_final_regret,std_final_regret,mean_passes,skipped_reason";

}  // namespace

BanditInstance InstanceSpec::build() const {
  switch (kind) {
    case Kind::Explicit: return make_instance(means, dist);
    case Kind::LinearGrid: return linear_grid(num_arms, step, dist);
    case Kind::TwoArm: return two_arm(gap, dist);
  }
  throw Error(Errc::ConfigError, "unknown instance kind");
}

void ExperimentConfig::validate() const {
  if (reps < 1) config_error("reps", "must be >= 1");
  if (horizons.empty()) config_error("T", "needs at least one horizon");
  for (auto t : horizons) {
    if (t < 1) config_error("T", "horizons must be positive");
  }
  if (algorithms.empty()) config_error("algorithms", "select at least one algorithm");
  if (memory < 1) config_error("M", "must be >= 1");
  if (!(alpha > 1.0)) config_error("alpha", "must exceed 1");
  if (delta_min && !(*delta_min > 0.0 && *delta_min <= 1.0)) {
    config_error("delta_min", "must lie in (0,1]");
  }
  try {
    (void)instance.build();
  } catch (const Error& e) {
    config_error("instance", e.what());
  }
}

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
  ExperimentConfig c;
  if (j.contains("instance")) c.instance = parse_instance(j.at("instance"), base_dir);
  if (j.contains("algorithms")) {
    c.algorithms.clear();
    for (const auto& name : get_field<std::vector<std::string>>(j, "algorithms")) {
      auto a = parse_algorithm(name);
      if (!a) config_error("algorithms", "unknown algorithm '" + name + "'");
      c.algorithms.push_back(*a);
    }
  }
  if (j.contains("M")) c.memory = get_field<std::size_t>(j, "M");
  if (j.contains("T")) {
    if (j.at("T").is_array()) {
      c.horizons = get_field<std::vector<std::uint64_t>>(j, "T");
    } else {
      c.horizons = {get_field<std::uint64_t>(j, "T")};
    }
  }
  if (j.contains("reps")) c.reps = get_field<std::size_t>(j, "reps");
  if (j.contains("base_seed")) c.base_seed = get_field<std::uint64_t>(j, "base_seed");
  if (j.contains("alpha")) c.alpha = get_field<double>(j, "alpha");
  if (j.contains("delta_min")) c.delta_min = get_field<double>(j, "delta_min");
  if (j.contains("b1_override")) c.b1_override = get_field<std::uint64_t>(j, "b1_override");
  if (j.contains("shuffle_arrival")) c.shuffle_arrival = get_field<bool>(j, "shuffle_arrival");
  if (j.contains("threads")) c.threads = get_field<std::size_t>(j, "threads");
  if (j.contains("output_dir")) {
    std::filesystem::path out = get_field<std::string>(j, "output_dir");
    c.output_dir = (out.is_relative() && !base_dir.empty()) ? base_dir / out : out;
  }
  if (j.contains("verify")) c.verify = parse_verify(j.at("verify"));
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

InstanceSpec load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open instance file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, "instance file " + path.string() + ": " + e.what());
  }
  InstanceSpec spec;
  spec.kind = InstanceSpec::Kind::Explicit;
  spec.means = get_field<std::vector<double>>(j, "means");
  spec.dist = parse_dist(j.value("dist", std::string("bernoulli")), "dist");
  return spec;
}

ExperimentConfig sec6_preset() {
  ExperimentConfig c;
  c.instance.kind = InstanceSpec::Kind::LinearGrid;
  c.instance.num_arms = 30;
  c.memory = 4;
  c.reps = 10;
  c.shuffle_arrival = true;
  c.algorithms = {Algorithm::Ucb1, Algorithm::UcbM, Algorithm::UcbLam};
  return c;
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t rep) noexcept {
  return Rng::derive(base_seed, rep);
}

BanditInstance arrival_instance(const BanditInstance& base, std::uint64_t rep_seed, bool shuffle) {
  if (!shuffle) return base;
  Rng order_rng(Rng::derive(rep_seed, 0x0A11));
  const auto order = random_permutation(base.size(), order_rng);
  return base.permuted(order);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const BanditInstance base = config.instance.build();
  const UcbConfig ucb{config.alpha};
  ExperimentResult result;

  for (Algorithm algo : config.algorithms) {
    for (std::uint64_t horizon : config.horizons) {
      SummaryRow row;
      row.algorithm = std::string(algorithm_name(algo));
      row.num_arms = base.size();
      row.memory = config.memory;
      row.horizon = horizon;
      row.reps = config.reps;

      std::vector<RepRow> reps(config.reps);
      const auto start = std::chrono::steady_clock::now();
      try {
        parallel_for(config.reps, config.threads, [&](std::size_t r) {
          const std::uint64_t seed = replication_seed(config.base_seed, r);
          const BanditInstance inst = arrival_instance(base, seed, config.shuffle_arrival);
          HybridOptions hybrid;
          hybrid.delta_min = config.delta_min ? config.delta_min : inst.delta_min();
          hybrid.b1_override = config.b1_override;
          const RunTrace trace = run_algorithm(algo, inst, config.memory, horizon, ucb, seed, hybrid);
          const RegretBreakdown br = bifurcate_regret(trace, inst);
          reps[r] = RepRow{algo,  r,     seed,  horizon, br.total, pass_count(trace),
                           br.r1, br.r2, realized_regret(trace, inst)};
        });
      } catch (const Error& e) {
        row.skipped_reason = std::string(errc_name(e.code()));
        reps.clear();
      }
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      if (row.skipped_reason.empty()) {
        std::vector<double> finals;
        double passes = 0.0;
        for (const auto& r : reps) {
          finals.push_back(r.final_regret);
          passes += static_cast<double>(r.passes);
        }
        double mean = 0.0;
        for (double f : finals) mean += f;
        mean /= static_cast<double>(finals.size());
        row.mean_final_regret = mean;
        row.std_final_regret = sample_std(finals, mean);
        row.mean_passes = passes / static_cast<double>(reps.size());
        result.reps.insert(result.reps.end(), reps.begin(), reps.end());
      }
      result.summary.push_back(std::move(row));
    }
  }
  return result;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.num_arms << ',' << r.memory << ',' << r.horizon << ',' << r.reps
       << ',';
    if (r.skipped_reason.empty()) {
      os << format_double(r.mean_final_regret) << ',' << format_double(r.std_final_regret) << ','
         << format_double(r.mean_passes) << ",\n";
    } else {
      os << ",,," << r.skipped_reason << '\n';
    }
  }
}

void write_reps_csv(std::ostream& os, const std::vector<RepRow>& rows) {
  os << "algorithm,rep,seed,T,final_regret,passes,r1,r2\n";
  for (const auto& r : rows) {
    os << algorithm_name(r.algorithm) << ',' << r.rep << ',' << r.seed << ',' << r.horizon << ','
       << format_double(r.final_regret) << ',' << r.passes << ',' << format_double(r.r1) << ','
       << format_double(r.r2) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::ConfigError, "summary CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSummaryHeader) {
    throw Error(Errc::ConfigError, "unexpected summary CSV header: " + line);
  }
  std::vector<SummaryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) {
      throw Error(Errc::ConfigError, "summary CSV line " + std::to_string(lineno) +
                                         " has " + std::to_string(f.size()) + " fields");
    }
    try {
      SummaryRow r;
      r.algorithm = f[0];
      r.num_arms = std::stoul(f[1]);
      r.memory = std::stoul(f[2]);
      r.horizon = std::stoull(f[3]);
      r.reps = std::stoul(f[4]);
      r.skipped_reason = f[8];
      if (r.skipped_reason.empty()) {
        r.mean_final_regret = std::stod(f[5]);
        r.std_final_regret = std::stod(f[6]);
        r.mean_passes = std::stod(f[7]);
      }
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw Error(Errc::ConfigError, "summary CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& output_dir) {
  std::filesystem::create_directories(output_dir);
  const auto open = [&](const char* name) {
    std::ofstream os(output_dir / name);
    if (!os) throw Error(Errc::ConfigError, "cannot write " + (output_dir / name).string());
    return os;
  };
  {
    auto os = open("summary.csv");
    write_summary_csv(os, result.summary);
  }
  {
    auto os = open("reps.csv");
    write_reps_csv(os, result.reps);
  }
  {
    auto os = open("realized.csv");
    os << "algorithm,rep,T,realized_regret\n";
    for (const auto& r : result.reps) {
      os << algorithm_name(r.algorithm) << ',' << r.rep << ',' << r.horizon << ','
         << format_double(r.realized_regret) << '\n';
    }
  }
  {
    auto os = open("timing.csv");
    os << "algorithm,T,wall_seconds\n";
    for (const auto& r : result.summary) {
      os << r.algorithm << ',' << r.horizon << ',' << format_double(r.wall_seconds) << '\n';
    }
  }
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

Verdict judge(double estimate, double stderr_, double bound, bool vacuous, bounds::Side side,
              std::size_t samples) {
  if (samples == 0 || std::isnan(estimate)) return Verdict::Skipped;
  if (vacuous) return Verdict::Vacuous;
  const double slack = 3.0 * stderr_;
  const bool violated =
      side == bounds::Side::Upper ? estimate - slack > bound : estimate + slack < bound;
  return violated ? Verdict::Violated : Verdict::Holds;
}

namespace {

std::string cell_name(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += ';';
    s += k;
    s += '=';
    s += format_double(v);
  }
  return s;
}

VerifyRow prob_row(std::string bound, std::string cell, const bounds::ProbBound& b, bounds::Side side,
                   std::size_t hits, std::size_t n) {
  VerifyRow row;
  row.bound = std::move(bound);
  row.cell = std::move(cell);
  row.bound_value = b.value;
  row.samples = n;
  if (n > 0) {
    row.mc_estimate = static_cast<double>(hits) / static_cast<double>(n);
    row.mc_stderr = binomial_stderr(row.mc_estimate, n);
  } else {
    row.mc_estimate = std::numeric_limits<double>::quiet_NaN();
    row.mc_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  row.verdict = judge(row.mc_estimate, row.mc_stderr, b.value, b.vacuous || !b.valid, side, n);
  return row;
}

std::vector<VerifyRow> verify_mpa(const ExperimentConfig& c, const BanditInstance& inst) {
  const UcbConfig ucb{c.alpha};
  const std::size_t k = inst.size();
  std::vector<ArmId> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  std::vector<VerifyRow> rows;
  for (std::uint64_t b : c.verify->budgets) {
    std::vector<char> correct(c.reps, 0);
    parallel_for(c.reps, c.threads, [&](std::size_t r) {
      Rng rng(Rng::derive(replication_seed(c.base_seed, r), b));
      const WindowResult res = run_allocation(inst, all, b, ucb, rng);
      correct[r] = inst.is_optimal(most_played_arm(res)) ? 1 : 0;
    });
    const std::size_t hits = static_cast<std::size_t>(std::count(correct.begin(), correct.end(), 1));
    const double bd = static_cast<double>(b);
    const auto cell = cell_name({{"M", static_cast<double>(k)}, {"b", bd}, {"alpha", c.alpha}});
    rows.push_back(prob_row("mpa_success_lb", cell, bounds::mpa_success_lb(k, bd, c.alpha),
                            bounds::Side::Lower, hits, c.reps));
    rows.push_back(prob_row("mpa_failure_ub_union", cell,
                            bounds::mpa_failure_ub_general(k, bd, c.alpha).union_all,
                            bounds::Side::Upper, c.reps - hits, c.reps));
  }
  return rows;
}

std::vector<VerifyRow> verify_hoeffding(const ExperimentConfig& c, const BanditInstance& inst) {
  const std::optional<double> delta = c.delta_min ? c.delta_min : inst.delta_min();
  if (!delta) throw Error(Errc::MissingDeltaMin, "hoeffding check needs delta_min");
  std::vector<VerifyRow> rows;
  for (std::uint64_t b1 : c.verify->budgets) {
    std::vector<char> wrong(c.reps, 0);
    parallel_for(c.reps, c.threads, [&](std::size_t r) {
      const std::uint64_t seed = replication_seed(c.base_seed, r);
      const BanditInstance arr = arrival_instance(inst, seed, c.shuffle_arrival);
      Rng rng(seed);
      wrong[r] = arr.is_optimal(hybrid_first_pass(arr, c.memory, b1, rng)) ? 0 : 1;
    });
    const std::size_t hits = static_cast<std::size_t>(std::count(wrong.begin(), wrong.end(), 1));
    const auto cell = cell_name({{"K", static_cast<double>(inst.size())},
                                 {"M", static_cast<double>(c.memory)},
                                 {"delta_min", *delta},
                                 {"b1", static_cast<double>(b1)}});
    rows.push_back(prob_row("mistake_prob_ub", cell,
                            bounds::mistake_prob_ub(inst.size(), *delta, static_cast<double>(b1)),
                            bounds::Side::Upper, hits, c.reps));
  }
  return rows;
}

std::vector<VerifyRow> verify_presence(const ExperimentConfig& c, const BanditInstance& inst) {
  const UcbConfig ucb{c.alpha};
  std::vector<VerifyRow> rows;
  const std::size_t h0 = subphase_count(inst.size(), c.memory);
  for (std::uint64_t horizon : c.horizons) {
    std::vector<RunTrace> traces(c.reps);
    parallel_for(c.reps, c.threads, [&](std::size_t r) {
      const std::uint64_t seed = replication_seed(c.base_seed, r);
      const BanditInstance arr = arrival_instance(inst, seed, c.shuffle_arrival);
      traces[r] = run_ucb_lam(arr, c.memory, horizon, ucb, seed, Growth::Square);
      traces[r].pulls.clear();
      traces[r].pulls.shrink_to_fit();
    });
    const PhaseSchedule sched =
        make_multipass_schedule(inst.size(), c.memory, horizon, Growth::Square);
    for (const PresenceCell& cell : presence_frequencies(traces, inst)) {
      const double bw = static_cast<double>(sched.allotted[cell.phase - 1][cell.subphase - 1]);
      const auto name = cell_name({{"T", static_cast<double>(horizon)},
                                   {"w", static_cast<double>(cell.phase)},
                                   {"j", static_cast<double>(cell.subphase)}});
      if (cell.phase >= 2) {
        const double prev = static_cast<double>(sched.budgets[cell.phase - 2]);
        rows.push_back(prob_row("best_absent_ub", name + ";b_prev=" + format_double(prev),
                                bounds::best_absent_ub(c.memory, h0, prev), bounds::Side::Upper,
                                cell.traces - cell.present, cell.traces));
      }
      rows.push_back(prob_row("mpa_success_lb", name + ";b=" + format_double(bw),
                              bounds::mpa_success_lb(c.memory, bw, c.alpha), bounds::Side::Lower,
                              cell.recommended_given_present, cell.present));
    }
  }
  return rows;
}

std::vector<VerifyRow> verify_ucb1(const ExperimentConfig& c, const BanditInstance& inst) {
  const UcbConfig ucb{c.alpha};
  std::vector<VerifyRow> rows;
  for (std::uint64_t horizon : c.horizons) {
    std::vector<double> regrets(c.reps);
    parallel_for(c.reps, c.threads, [&](std::size_t r) {
      const std::uint64_t seed = replication_seed(c.base_seed, r);
      const BanditInstance arr = arrival_instance(inst, seed, c.shuffle_arrival);
      regrets[r] = final_regret(run_ucb1_full(arr, horizon, ucb, seed), arr);
    });
    double mean = 0.0;
    for (double v : regrets) mean += v;
    mean /= static_cast<double>(regrets.size());
    const bounds::Ucb1Bound b = bounds::ucb1_regret_bound(inst.size(), horizon);
    VerifyRow row;
    row.bound = b.tight_applicable ? "ucb1_regret_bound_tight" : "ucb1_regret_bound_general";
    row.cell = cell_name({{"K", static_cast<double>(inst.size())}, {"T", static_cast<double>(horizon)}});
    row.bound_value = b.tight_applicable ? b.tight : b.general;
    row.mc_estimate = mean;
    row.mc_stderr = sample_std(regrets, mean) / std::sqrt(static_cast<double>(regrets.size()));
    row.samples = regrets.size();
    row.verdict = judge(row.mc_estimate, row.mc_stderr, row.bound_value, false, bounds::Side::Upper,
                        row.samples);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<VerifyRow> verify_bounds(const ExperimentConfig& config) {
  config.validate();
  if (!config.verify) throw Error(Errc::ConfigError, "field 'verify': missing");
  const BanditInstance inst = config.instance.build();
  switch (config.verify->check) {
    case VerifySpec::Check::MpaSuccess: return verify_mpa(config, inst);
    case VerifySpec::Check::Hoeffding: return verify_hoeffding(config, inst);
    case VerifySpec::Check::Presence: return verify_presence(config, inst);
    case VerifySpec::Check::Ucb1Regret: return verify_ucb1(config, inst);
  }
  return {};
}

void write_verify_csv(std::ostream& os, const std::vector<VerifyRow>& rows) {
  os << "bound,cell,bound_value,mc_estimate,mc_stderr,samples,verdict\n";
  for (const auto& r : rows) {
    os << r.bound << ',' << r.cell << ',' << format_double(r.bound_value) << ','
       << format_double(r.mc_estimate) << ',' << format_double(r.mc_stderr) << ',' << r.samples
       << ',' << verdict_name(r.verdict) << '\n';
  }
}

std::vector<ScalingFit> scaling_fit(const std::vector<SummaryRow>& rows, std::size_t min_points) {
  std::map<std::string, std::vector<std::pair<double, double>>> pts;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (!pts.contains(r.algorithm)) order.push_back(r.algorithm);
    auto& v = pts[r.algorithm];
    if (r.skipped_reason.empty() && r.mean_final_regret > 0.0 && r.horizon > 0) {
      v.emplace_back(std::log(static_cast<double>(r.horizon)), std::log(r.mean_final_regret));
    }
  }
  std::vector<ScalingFit> out;
  for (const auto& name : order) {
    const auto& v = pts[name];
    if (v.size() < std::max<std::size_t>(2, min_points)) {
      throw Error(Errc::InsufficientGrid, name + " has " + std::to_string(v.size()) +
                                              " usable horizons, need " +
                                              std::to_string(std::max<std::size_t>(2, min_points)));
    }
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : v) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(v.size());
    my /= static_cast<double>(v.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : v) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0.0) throw Error(Errc::InsufficientGrid, name + " has a single distinct horizon");
    ScalingFit f;
    f.algorithm = name;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.points = v.size();
    out.push_back(f);
  }
  return out;
}

}  // namespace armstream
