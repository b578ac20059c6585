#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogradar/dominance.hpp"
#include "cogradar/loss.hpp"
#include "cogradar/markov_channel.hpp"
#include "cogradar/policy.hpp"
#include "cogradar/trace.hpp"

namespace cogradar {

/// Inclusive grid start:stop:step.
struct Grid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.05;

  static Grid parse(std::string_view text);
  /// Points rounded to 1e-10 so that 0.1 * 3 prints as 0.3.
  std::vector<double> points() const;
  std::string to_string() const;
};

enum class OutputFormat { csv, json };

/// Fully resolved channel for one experiment point.
struct ChannelSpec {
  std::vector<OccupancyVector> states;
  TransitionMatrix transitions;
  std::optional<std::size_t> initial;  // nullopt: uniform random
  double p_miss = 0.0;

  std::size_t d() const { return states.front().size(); }
};

/// State 0 occupies the first sub-band, state 1 the last: [1,0,...,0] and
/// [0,...,0,1].
std::vector<OccupancyVector> default_states(std::size_t d);

struct ExperimentConfig {
  std::size_t d = 5;
  std::size_t n = 10'000;
  std::size_t trials = 20;
  double eta = 0.1;
  double p_miss = 0.0;
  double snr0_db = 10.0;
  double inr_db = 14.0;
  std::vector<std::string> policies{"saa", "ts", "genie"};

  // Channel. Empty states means default_states(d); transitions, when set,
  // replace the two-state matrix built from p12/p21 for `run`.
  std::vector<OccupancyVector> states;
  std::optional<TransitionMatrix> transitions;
  std::optional<std::size_t> initial;
  double p12 = 0.3;
  double p21 = 0.3;

  Grid grid;
  std::uint64_t seed = 1;
  std::string out;
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 1;

  TsHyperparameters ts;
  double bellman_alpha = 0.9;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;

  LossParams loss_params() const;
  std::vector<OccupancyVector> resolved_states() const;
  /// Channel with the configured matrix (or the two-state p12/p21 matrix).
  ChannelSpec channel() const;
  /// Two-state channel for a sweep point.
  ChannelSpec channel(double p12, double p21, double p_miss) const;
};

/// Runs one episode of n PRIs on the trial's streams. Within a PRI the
/// channel steps to s_t first, then the policy decides from what it already
/// knows (only the genie sees s_t), then the waveform is scored against s_t,
/// and finally the policy receives o_t = observe(s_t) and the realized loss.
/// Channel-stream call order per PRI: one transition draw, one miss draw.
EpisodeTrace run_episode(const ChannelSpec& channel, Policy& policy, const LossParams& params,
                         std::size_t n, std::uint64_t master_seed, std::uint64_t trial);

/// Builds the named policy for `channel` and runs it.
EpisodeTrace run_episode(const ChannelSpec& channel, std::string_view policy,
                         const ExperimentConfig& config, std::uint64_t trial);

struct EpisodeSummary {
  double collision_rate = 0.0;
  double missed_opp_rate = 0.0;
  double mean_loss = 0.0;
  double mean_sinr_db = 0.0;
  double total_loss = 0.0;
  std::size_t collisions = 0;
  std::size_t missed_without_collision = 0;
  std::size_t benign = 0;
};

EpisodeSummary summarize(const EpisodeTrace& trace);

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(trials); 0 for one trial
};

Estimate estimate(const std::vector<double>& values);

struct AggregateStats {
  std::string policy;
  Estimate collision_rate;
  Estimate missed_opp_rate;
  Estimate mean_loss;
  Estimate mean_sinr_db;
  Estimate final_regret;
  std::vector<EpisodeSummary> per_trial;
  std::vector<double> per_trial_regret;
  /// Trial-mean cumulative regret against the genie; filled when requested.
  std::vector<double> mean_regret_curve;
};

struct TrialOptions {
  bool keep_regret_curves = false;
};

/// Runs config.trials independent trials of every configured policy on
/// `channel`. Trial k uses the streams derived from seed + k, shared by all
/// policies so that regret is measured on coupled realizations. Trials are
/// spread over config.threads workers and merged in trial order.
std::vector<AggregateStats> run_trials(const ExperimentConfig& config, const ChannelSpec& channel,
                                       TrialOptions options = {});

struct ResultRow {
  std::string experiment;
  std::optional<double> p12;
  std::optional<double> p21;
  double p_miss = 0.0;
  std::size_t n = 0;
  std::size_t trials = 0;
  AggregateStats stats;
};

std::vector<ResultRow> run_single(const ExperimentConfig& config, TrialOptions options = {});
/// p12 over config.grid with p21 = config.p21.
std::vector<ResultRow> sweep_p12(const ExperimentConfig& config);
/// p12 = p21 = p over config.grid.
std::vector<ResultRow> sweep_joint(const ExperimentConfig& config);
/// p_miss over config.grid with p12 = config.p12, p21 = config.p21.
std::vector<ResultRow> sweep_miss(const ExperimentConfig& config);
/// Joint sweep at n = 300.
std::vector<ResultRow> short_horizon(const ExperimentConfig& config);

enum class DominanceStatistic { loss, sinr };

struct DominanceReport {
  std::string policy_1;
  std::string policy_2;
  DominanceStatistic statistic = DominanceStatistic::loss;
  DominanceVerdict fsd = DominanceVerdict::incomparable;
  DominanceVerdict ssd = DominanceVerdict::incomparable;
  bool statewise = false;
  double lambda_1 = 0.0;  // mean loss over all PRIs and trials
  double lambda_2 = 0.0;
  std::vector<double> state_loss_1;  // mean loss by the state the decision followed
  std::vector<double> state_loss_2;
  std::size_t n = 0;
  std::size_t trials = 0;
};

/// Pools per-PRI statistics over all trials of both policies on the
/// configured channel and compares them. SINR samples are negated so that
/// lower is better for every statistic.
DominanceReport run_dominance(const ExperimentConfig& config, std::string_view policy_1,
                              std::string_view policy_2,
                              DominanceStatistic statistic = DominanceStatistic::loss);

}  // namespace cogradar
