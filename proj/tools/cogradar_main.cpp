// Command-line front end for the waveform-selection experiments.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cogradar/errors.hpp"
#include "cogradar/harness.hpp"
#include "cogradar/report.hpp"

namespace {

using namespace cogradar;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::size_t> d;
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  std::optional<double> eta;
  std::optional<double> p_miss;
  std::optional<double> p12;
  std::optional<double> p21;
  std::optional<double> snr0_db;
  std::optional<double> inr_db;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policies;
  std::optional<std::string> grid;
  std::optional<std::string> initial;
  std::optional<double> ts_prior;
  std::optional<double> ts_noise;
  std::optional<double> bellman_alpha;
  std::optional<unsigned> threads;
  std::string out;
  std::string format = "csv";
  std::string regret_out;
  std::string statistic = "loss";
};

void add_shared_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON channel/experiment file");
  cmd.add_option("--d", f.d, "number of sub-bands");
  cmd.add_option("--n", f.n, "horizon in PRIs");
  cmd.add_option("--trials", f.trials, "independent trials");
  cmd.add_option("--eta", f.eta, "missed-opportunity weight, 0 <= eta <= 1/d");
  cmd.add_option("--p-miss", f.p_miss, "probability the observation is all zeros");
  cmd.add_option("--p12", f.p12, "transition probability state 1 -> 2");
  cmd.add_option("--p21", f.p21, "transition probability state 2 -> 1");
  cmd.add_option("--snr0-db", f.snr0_db, "full-band collision-free SNR");
  cmd.add_option("--inr-db", f.inr_db, "INR per colliding sub-band");
  cmd.add_option("--seed", f.seed, "master seed");
  cmd.add_option("--policies", f.policies, "comma list: saa,ts,genie,bellman,fixed:<s>:<w>");
  cmd.add_option("--grid", f.grid, "start:stop:step");
  cmd.add_option("--initial", f.initial, "initial state index or 'random'");
  cmd.add_option("--ts-prior", f.ts_prior, "TS prior precision");
  cmd.add_option("--ts-noise", f.ts_noise, "TS noise variance");
  cmd.add_option("--bellman-alpha", f.bellman_alpha, "Bellman oracle discount");
  cmd.add_option("--threads", f.threads, "worker threads (output does not depend on it)");
  cmd.add_option("--out", f.out, "output path (default stdout)");
  cmd.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ExperimentConfig resolve(const Flags& f, ExperimentConfig config) {
  if (f.config) apply_config_file(*f.config, config);
  if (f.d) config.d = *f.d;
  if (f.n) config.n = *f.n;
  if (f.trials) config.trials = *f.trials;
  if (f.eta) config.eta = *f.eta;
  if (f.p_miss) config.p_miss = *f.p_miss;
  if (f.p12) config.p12 = *f.p12;
  if (f.p21) config.p21 = *f.p21;
  if (f.snr0_db) config.snr0_db = *f.snr0_db;
  if (f.inr_db) config.inr_db = *f.inr_db;
  if (f.seed) config.seed = *f.seed;
  if (f.policies) config.policies = split_list(*f.policies);
  if (f.grid) config.grid = Grid::parse(*f.grid);
  if (f.initial) {
    if (*f.initial == "random") {
      config.initial.reset();
    } else {
      try {
        config.initial = static_cast<std::size_t>(std::stoul(*f.initial));
      } catch (const std::exception&) {
        throw ConfigError("--initial must be an index or 'random'");
      }
    }
  }
  if (f.ts_prior) config.ts.prior_precision = *f.ts_prior;
  if (f.ts_noise) config.ts.noise_variance = *f.ts_noise;
  if (f.bellman_alpha) config.bellman_alpha = *f.bellman_alpha;
  if (f.threads) config.threads = *f.threads;
  config.format = f.format == "json" ? OutputFormat::json : OutputFormat::csv;
  config.out = f.out;
  config.validate();
  return config;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

void emit_rows(std::string_view experiment, const ExperimentConfig& config,
               const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  if (config.format == OutputFormat::json) {
    os << rows_to_json(experiment, config, rows).dump(2) << '\n';
  } else {
    write_csv(os, experiment, config, rows);
  }
  emit(config.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radar waveform-selection experiments in Markov interference channels"};
  app.require_subcommand(1);

  Flags flags;
  auto* run = app.add_subcommand("run", "single experiment point");
  auto* sweep_p12_cmd = app.add_subcommand("sweep-p12", "sweep p12 with p21 fixed");
  auto* sweep_joint_cmd = app.add_subcommand("sweep-joint", "sweep p12 = p21");
  auto* sweep_miss_cmd = app.add_subcommand("sweep-miss", "sweep the observation miss probability");
  auto* short_cmd = app.add_subcommand("short-horizon", "joint sweep at n = 300");
  auto* dominance = app.add_subcommand("dominance", "stochastic-dominance report for two policies");
  for (auto* cmd : {run, sweep_p12_cmd, sweep_joint_cmd, sweep_miss_cmd, short_cmd, dominance}) {
    add_shared_flags(*cmd, flags);
  }
  run->add_option("--regret-out", flags.regret_out, "write trial-mean regret curves (CSV)");
  dominance->add_option("--statistic", flags.statistic, "loss or sinr")
      ->check(CLI::IsMember({"loss", "sinr"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    ExperimentConfig defaults;
    if (*run) {
      const auto config = resolve(flags, defaults);
      TrialOptions options;
      options.keep_regret_curves = !flags.regret_out.empty();
      const auto rows = run_single(config, options);
      emit_rows("run", config, rows);
      if (options.keep_regret_curves) {
        std::ostringstream os;
        write_regret_csv(os, config, rows);
        emit(flags.regret_out, os.str());
      }
    } else if (*sweep_p12_cmd) {
      const auto config = resolve(flags, defaults);
      emit_rows("sweep-p12", config, sweep_p12(config));
    } else if (*sweep_joint_cmd) {
      const auto config = resolve(flags, defaults);
      emit_rows("sweep-joint", config, sweep_joint(config));
    } else if (*sweep_miss_cmd) {
      defaults.grid = Grid{0.0, 0.5, 0.1};
      const auto config = resolve(flags, defaults);
      emit_rows("sweep-miss", config, sweep_miss(config));
    } else if (*short_cmd) {
      defaults.n = 300;
      auto config = resolve(flags, defaults);
      config.n = 300;
      emit_rows("short-horizon", config, short_horizon(config));
    } else if (*dominance) {
      defaults.policies = {"ts", "saa"};
      const auto config = resolve(flags, defaults);
      if (config.policies.size() != 2) {
        throw ConfigError("dominance needs exactly two policies, e.g. --policies ts,saa");
      }
      const auto report =
          run_dominance(config, config.policies[0], config.policies[1],
                        flags.statistic == "sinr" ? DominanceStatistic::sinr
                                                  : DominanceStatistic::loss);
      emit(config.out, dominance_to_json(report, config).dump(2) + "\n");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
