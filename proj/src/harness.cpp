#include "cogradar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "cogradar/errors.hpp"

namespace cogradar {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

void check_probability(double p, std::string_view what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string(what) + " must lie in [0,1]");
  }
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

Grid Grid::parse(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos) {
    throw ConfigError("grid '" + std::string(text) + "' is not of the form start:stop:step");
  }
  Grid g{parse_double(text.substr(0, a), "grid start"),
         parse_double(text.substr(a + 1, b - a - 1), "grid stop"),
         parse_double(text.substr(b + 1), "grid step")};
  if (!(g.step > 0.0)) throw ConfigError("grid step must be positive");
  if (g.stop < g.start) throw ConfigError("grid stop is below grid start");
  return g;
}

std::vector<double> Grid::points() const {
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = start + static_cast<double>(k) * step;
    out.push_back(std::round(v * 1e10) / 1e10);
  }
  return out;
}

std::string Grid::to_string() const {
  std::ostringstream os;
  os << start << ':' << stop << ':' << step;
  return os.str();
}

std::vector<OccupancyVector> default_states(std::size_t d) {
  if (d < 2) throw ConfigError("the default two-state channel needs d >= 2");
  std::vector<std::uint8_t> a(d, 0);
  std::vector<std::uint8_t> b(d, 0);
  a.front() = 1;
  b.back() = 1;
  return {OccupancyVector(std::move(a)), OccupancyVector(std::move(b))};
}

void ExperimentConfig::validate() const {
  if (d < 1) throw ConfigError("d must be at least 1");
  if (n < 1) throw ConfigError("n must be at least 1");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  loss_params().validate(d);
  check_probability(p_miss, "p_miss");
  check_probability(p12, "p12");
  check_probability(p21, "p21");
  if (!(grid.step > 0.0)) throw ConfigError("grid step must be positive");
  for (double p : grid.points()) check_probability(p, "grid value");
  if (policies.empty()) throw ConfigError("no policies configured");
  for (const auto& p : policies) validate_policy_name(p, d);
  for (const auto& s : states) {
    if (s.size() != d) {
      throw ConfigError("state " + s.to_string() + " does not have d = " + std::to_string(d) +
                        " sub-bands");
    }
  }
  if (transitions && transitions->size() != resolved_states().size()) {
    throw ConfigError("transition matrix size does not match the number of states");
  }
  if (initial && *initial >= resolved_states().size()) {
    throw ConfigError("initial state index out of range");
  }
  if (!(bellman_alpha >= 0.0 && bellman_alpha < 1.0)) {
    throw ConfigError("bellman alpha must lie in [0,1)");
  }
  if (!(ts.prior_precision > 0.0) || !(ts.noise_variance > 0.0)) {
    throw ConfigError("TS prior precision and noise variance must be positive");
  }
}

LossParams ExperimentConfig::loss_params() const {
  LossParams p;
  p.eta = eta;
  p.sinr.snr0_db = snr0_db;
  p.sinr.inr_db = inr_db;
  return p;
}

std::vector<OccupancyVector> ExperimentConfig::resolved_states() const {
  return states.empty() ? default_states(d) : states;
}

ChannelSpec ExperimentConfig::channel() const {
  if (transitions) return ChannelSpec{resolved_states(), *transitions, initial, p_miss};
  return channel(p12, p21, p_miss);
}

ChannelSpec ExperimentConfig::channel(double p12_, double p21_, double p_miss_) const {
  auto s = resolved_states();
  if (s.size() != 2) {
    throw ConfigError("parameter sweeps need exactly two channel states, got " +
                      std::to_string(s.size()));
  }
  check_probability(p12_, "p12");
  check_probability(p21_, "p21");
  check_probability(p_miss_, "p_miss");
  return ChannelSpec{std::move(s), TransitionMatrix::two_state(p12_, p21_), initial, p_miss_};
}

// ---------------------------------------------------------------------------

EpisodeTrace run_episode(const ChannelSpec& channel_spec, Policy& policy, const LossParams& params,
                         std::size_t n, std::uint64_t master_seed, std::uint64_t trial) {
  const std::size_t d = channel_spec.d();
  params.validate(d);
  const ObservationModel observation_model(channel_spec.p_miss);
  auto streams = make_trial_streams(master_seed, trial);
  auto channel = MarkovChannel::build(channel_spec.states, channel_spec.transitions, channel_spec.initial, streams.channel);
  const auto zeros = OccupancyVector::zeros(d);

  EpisodeTrace trace;
  trace.policy = policy.name();
  trace.initial_state = channel.current();
  trace.reserve(n);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t previous = channel.current();
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t s = channel.step(streams.channel);
    const OccupancyVector& state = channel.current_state();
    const Waveform w = policy.decide(DecisionContext{state, previous}, streams.policy);
    if (w.d != d) throw ConfigError("policy " + policy.name() + " returned a waveform of wrong d");
    const PriOutcome outcome = evaluate(w, state, params);
    const bool missed = unit(streams.channel) < observation_model.p_miss;
    policy.update(Feedback{missed ? zeros : state, s, outcome.loss});

    trace.state.push_back(s);
    trace.observation_missed.push_back(missed ? 1 : 0);
    trace.waveform.push_back(w);
    trace.collision_count.push_back(outcome.collision_count);
    trace.missed_count.push_back(outcome.missed_count);
    trace.loss.push_back(outcome.loss);
    trace.sinr_db.push_back(outcome.sinr_db);
    previous = s;
  }
  trace.state_hash = hash_realization(trace.initial_state, trace.state, trace.observation_missed);
  return trace;
}

namespace {

PolicyEnvironment environment_for(const ChannelSpec& channel, const ExperimentConfig& config) {
  PolicyEnvironment env;
  env.d = channel.d();
  env.states = &channel.states;
  env.transitions = &channel.transitions;
  env.loss = config.loss_params();
  env.ts = config.ts;
  env.bellman_alpha = config.bellman_alpha;
  return env;
}

}  // namespace

EpisodeTrace run_episode(const ChannelSpec& channel, std::string_view policy,
                         const ExperimentConfig& config, std::uint64_t trial) {
  auto p = make_policy(policy, environment_for(channel, config));
  return run_episode(channel, *p, config.loss_params(), config.n, config.seed, trial);
}

EpisodeSummary summarize(const EpisodeTrace& trace) {
  EpisodeSummary s;
  const std::size_t n = trace.size();
  if (n == 0) return s;
  std::size_t missed = 0;
  double sinr = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const bool collided = trace.collision_count[t] > 0;
    const bool miss = trace.missed_count[t] > 0;
    if (collided) {
      ++s.collisions;
    } else if (miss) {
      ++s.missed_without_collision;
    } else {
      ++s.benign;
    }
    if (miss) ++missed;
    s.total_loss += trace.loss[t];
    sinr += trace.sinr_db[t];
  }
  const double dn = static_cast<double>(n);
  s.collision_rate = static_cast<double>(s.collisions) / dn;
  s.missed_opp_rate = static_cast<double>(missed) / dn;
  s.mean_loss = s.total_loss / dn;
  s.mean_sinr_db = sinr / dn;
  return s;
}

Estimate estimate(const std::vector<double>& values) {
  Estimate e;
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  for (double v : values) e.mean += v;
  e.mean /= n;
  if (values.size() < 2) return e;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.se = std::sqrt(ss / (n - 1.0) / n);
  return e;
}

std::vector<AggregateStats> run_trials(const ExperimentConfig& config, const ChannelSpec& channel,
                                       TrialOptions options) {
  config.validate();
  if (config.trials == 0) throw ConfigError("trials must be at least 1");
  const auto params = config.loss_params();
  params.validate(channel.d());
  const auto env = environment_for(channel, config);
  const std::size_t num_policies = config.policies.size();

  struct TrialResult {
    std::vector<EpisodeSummary> summaries;
    std::vector<double> regret;
    std::vector<std::vector<double>> regret_curves;
  };
  std::vector<TrialResult> results(config.trials);

  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    GeniePolicy genie;
    const EpisodeTrace genie_trace =
        run_episode(channel, genie, params, config.n, config.seed, trial);
    const double genie_loss = summarize(genie_trace).total_loss;
    TrialResult& r = results[trial];
    for (const auto& name : config.policies) {
      auto policy = make_policy(name, env);
      const EpisodeTrace trace = run_episode(channel, *policy, params, config.n, config.seed, trial);
      const EpisodeSummary s = summarize(trace);
      r.summaries.push_back(s);
      r.regret.push_back(s.total_loss - genie_loss);
      if (options.keep_regret_curves) {
        r.regret_curves.push_back(regret_curve(trace, genie_trace).cumulative);
      }
    }
  });

  std::vector<AggregateStats> out(num_policies);
  for (std::size_t k = 0; k < num_policies; ++k) {
    AggregateStats& a = out[k];
    a.policy = config.policies[k];
    std::vector<double> collision, missed, loss_v, sinr;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const auto& s = results[trial].summaries[k];
      a.per_trial.push_back(s);
      a.per_trial_regret.push_back(results[trial].regret[k]);
      collision.push_back(s.collision_rate);
      missed.push_back(s.missed_opp_rate);
      loss_v.push_back(s.mean_loss);
      sinr.push_back(s.mean_sinr_db);
    }
    a.collision_rate = estimate(collision);
    a.missed_opp_rate = estimate(missed);
    a.mean_loss = estimate(loss_v);
    a.mean_sinr_db = estimate(sinr);
    a.final_regret = estimate(a.per_trial_regret);
    if (options.keep_regret_curves) {
      a.mean_regret_curve.assign(config.n, 0.0);
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        const auto& c = results[trial].regret_curves[k];
        for (std::size_t t = 0; t < config.n; ++t) a.mean_regret_curve[t] += c[t];
      }
      for (double& v : a.mean_regret_curve) v /= static_cast<double>(config.trials);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void append_rows(std::vector<ResultRow>& rows, std::string_view experiment,
                 const ExperimentConfig& config, const ChannelSpec& channel,
                 std::optional<double> p12, std::optional<double> p21,
                 TrialOptions options = {}) {
  for (auto& stats : run_trials(config, channel, options)) {
    rows.push_back(ResultRow{std::string(experiment), p12, p21, channel.p_miss, config.n,
                             config.trials, std::move(stats)});
  }
}

}  // namespace

std::vector<ResultRow> run_single(const ExperimentConfig& config, TrialOptions options) {
  config.validate();
  const ChannelSpec channel = config.channel();
  std::optional<double> p12;
  std::optional<double> p21;
  if (channel.states.size() == 2) {
    p12 = channel.transitions(0, 1);
    p21 = channel.transitions(1, 0);
  }
  std::vector<ResultRow> rows;
  append_rows(rows, "run", config, channel, p12, p21, options);
  return rows;
}

std::vector<ResultRow> sweep_p12(const ExperimentConfig& config) {
  config.validate();
  std::vector<ResultRow> rows;
  for (double p : config.grid.points()) {
    append_rows(rows, "sweep-p12", config, config.channel(p, config.p21, config.p_miss), p,
                config.p21);
  }
  return rows;
}

std::vector<ResultRow> sweep_joint(const ExperimentConfig& config) {
  config.validate();
  std::vector<ResultRow> rows;
  for (double p : config.grid.points()) {
    append_rows(rows, "sweep-joint", config, config.channel(p, p, config.p_miss), p, p);
  }
  return rows;
}

std::vector<ResultRow> sweep_miss(const ExperimentConfig& config) {
  config.validate();
  std::vector<ResultRow> rows;
  for (double pm : config.grid.points()) {
    append_rows(rows, "sweep-miss", config, config.channel(config.p12, config.p21, pm),
                config.p12, config.p21);
  }
  return rows;
}

std::vector<ResultRow> short_horizon(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.n = 300;
  auto rows = sweep_joint(c);
  for (auto& r : rows) r.experiment = "short-horizon";
  return rows;
}

// ---------------------------------------------------------------------------

DominanceReport run_dominance(const ExperimentConfig& config, std::string_view policy_1,
                              std::string_view policy_2, DominanceStatistic statistic) {
  config.validate();
  const ChannelSpec channel = config.channel();
  const std::size_t num_states = channel.states.size();

  struct Collected {
    std::vector<double> samples;
    std::vector<double> state_loss_sum;
    std::vector<double> state_count;
    double loss_sum = 0.0;
  };
  auto collect = [&](std::string_view name) {
    std::vector<EpisodeTrace> traces(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t trial) {
      traces[trial] = run_episode(channel, name, config, trial);
    });
    Collected c;
    c.samples.reserve(config.n * config.trials);
    c.state_loss_sum.assign(num_states, 0.0);
    c.state_count.assign(num_states, 0.0);
    for (const auto& tr : traces) {
      std::size_t previous = tr.initial_state;
      for (std::size_t t = 0; t < tr.size(); ++t) {
        c.samples.push_back(statistic == DominanceStatistic::loss ? tr.loss[t] : -tr.sinr_db[t]);
        c.state_loss_sum[previous] += tr.loss[t];
        c.state_count[previous] += 1.0;
        c.loss_sum += tr.loss[t];
        previous = tr.state[t];
      }
    }
    return c;
  };

  const Collected a = collect(policy_1);
  const Collected b = collect(policy_2);
  const EmpiricalCdf fa(a.samples);
  const EmpiricalCdf fb(b.samples);

  DominanceReport report;
  report.policy_1 = std::string(policy_1);
  report.policy_2 = std::string(policy_2);
  report.statistic = statistic;
  report.fsd = first_order_dominates(fa, fb);
  report.ssd = second_order_dominates(fa, fb);
  const double total = static_cast<double>(config.n * config.trials);
  report.lambda_1 = a.loss_sum / total;
  report.lambda_2 = b.loss_sum / total;
  for (std::size_t i = 0; i < num_states; ++i) {
    // A state never visited contributes no evidence either way.
    report.state_loss_1.push_back(a.state_count[i] > 0 ? a.state_loss_sum[i] / a.state_count[i] : 0.0);
    report.state_loss_2.push_back(b.state_count[i] > 0 ? b.state_loss_sum[i] / b.state_count[i] : 0.0);
  }
  report.statewise = statewise_dominates(report.state_loss_1, report.state_loss_2);
  report.n = config.n;
  report.trials = config.trials;
  return report;
}

}  // namespace cogradar
