#include "cogradar/policy.hpp"

#include <cmath>
#include <limits>

#include "cogradar/errors.hpp"

namespace cogradar {

void SenseAndAvoid::observe(const OccupancyVector& o) {
  require_same_dimension(o, last_, "sense-and-avoid update");
  last_ = o;
}

// ---------------------------------------------------------------------------

ThompsonSampling::ThompsonSampling(std::size_t d, TsHyperparameters hyper)
    : d_(d), hyper_(hyper), catalog_(enumerate_waveforms(d)) {
  if (!(hyper_.prior_precision > 0.0)) throw ConfigError("TS prior precision must be positive");
  if (!(hyper_.noise_variance > 0.0)) throw ConfigError("TS noise variance must be positive");
  const auto p = static_cast<Eigen::Index>(d + 1);
  ArmPosterior prior;
  prior.precision = hyper_.prior_precision * Eigen::MatrixXd::Identity(p, p);
  prior.response = Eigen::VectorXd::Zero(p);
  prior.covariance = Eigen::MatrixXd::Identity(p, p) / hyper_.prior_precision;
  prior.mean = Eigen::VectorXd::Zero(p);
  arms_.assign(catalog_.size(), prior);
}

Eigen::VectorXd ThompsonSampling::features(const OccupancyVector& context) const {
  if (context.size() != d_) {
    throw ConfigError("TS context has " + std::to_string(context.size()) +
                      " sub-bands, expected " + std::to_string(d_));
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(d_ + 1));
  for (std::size_t i = 0; i < d_; ++i) x[static_cast<Eigen::Index>(i)] = context[i] ? 1.0 : 0.0;
  x[static_cast<Eigen::Index>(d_)] = 1.0;
  return x;
}

std::size_t ThompsonSampling::decide(const OccupancyVector& context, Rng& rng) {
  const Eigen::VectorXd x = features(context);
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    const auto& arm = arms_[k];
    const double mean = x.dot(arm.mean);
    const double variance = hyper_.noise_variance * x.dot(arm.covariance * x);
    const double sample = mean + std::sqrt(std::max(variance, 0.0)) * normal_(rng);
    if (sample < best_value) {
      best_value = sample;
      best = k;
    }
  }
  return best;
}

void ThompsonSampling::update(const OccupancyVector& context, std::size_t arm,
                              double observed_loss) {
  if (arm >= arms_.size()) {
    throw ConfigError("TS arm " + std::to_string(arm) + " out of range");
  }
  if (!(observed_loss >= 0.0 && observed_loss <= 1.0)) {
    throw ConfigError("TS loss must lie in [0,1]");
  }
  const Eigen::VectorXd x = features(context);
  auto& post = arms_[arm];
  post.precision.noalias() += x * x.transpose();
  post.response += observed_loss * x;
  const Eigen::LLT<Eigen::MatrixXd> llt(post.precision);
  if (llt.info() != Eigen::Success) throw NumericError("TS precision matrix lost definiteness");
  const auto p = post.precision.rows();
  post.covariance = llt.solve(Eigen::MatrixXd::Identity(p, p));
  post.mean = llt.solve(post.response);
}

double ThompsonSampling::predicted_loss(std::size_t arm, const OccupancyVector& context) const {
  return features(context).dot(arms_.at(arm).mean);
}

ThompsonSamplingPolicy::ThompsonSamplingPolicy(std::size_t d, TsHyperparameters hyper)
    : model_(d, hyper), context_(OccupancyVector::zeros(d)) {}

Waveform ThompsonSamplingPolicy::decide(const DecisionContext&, Rng& rng) {
  last_arm_ = model_.decide(context_, rng);
  pending_ = true;
  return model_.catalog()[last_arm_];
}

void ThompsonSamplingPolicy::update(const Feedback& feedback) {
  if (pending_) model_.update(context_, last_arm_, feedback.loss);
  pending_ = false;
  require_same_dimension(feedback.observation, context_, "TS update");
  context_ = feedback.observation;
}

// ---------------------------------------------------------------------------

BellmanTable bellman_build(const std::vector<OccupancyVector>& states,
                           const TransitionMatrix& transitions, const LossParams& params,
                           double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("discount alpha must lie in [0,1)");
  if (states.empty() || transitions.size() != states.size()) {
    throw ConfigError("Bellman oracle: state list and transition matrix disagree");
  }
  const std::size_t n = states.size();
  const auto catalog = enumerate_waveforms(states.front().size());

  BellmanTable table;
  table.alpha = alpha;
  table.expected_cost.assign(n, std::vector<double>(catalog.size(), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (transitions(i, j) > 0.0) c += transitions(i, j) * loss(catalog[k], states[j], params);
      }
      table.expected_cost[i][k] = c;
    }
  }

  constexpr double kTolerance = 1e-10;
  constexpr std::size_t kMaxIterations = 10'000'000;
  std::vector<double> value(n, 0.0);
  std::vector<std::size_t> best(n, 0);
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    std::vector<double> next(n);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double continuation = 0.0;
      for (std::size_t j = 0; j < n; ++j) continuation += transitions(i, j) * value[j];
      double q_min = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < catalog.size(); ++k) {
        const double q = table.expected_cost[i][k] + alpha * continuation;
        if (q < q_min) {
          q_min = q;
          best[i] = k;
        }
      }
      next[i] = q_min;
      change = std::max(change, std::abs(next[i] - value[i]));
    }
    value = std::move(next);
    if (change < kTolerance) {
      table.iterations = it;
      table.value = std::move(value);
      for (std::size_t i = 0; i < n; ++i) table.action.push_back(catalog[best[i]]);
      return table;
    }
  }
  throw NumericError("Bellman value iteration did not converge");
}

BellmanTable bellman_build(const MarkovChannel& channel, const LossParams& params,
                           double alpha) {
  return bellman_build(channel.states(), channel.transitions(), params, alpha);
}

Waveform genie_decide(const OccupancyVector& true_state, Rng& rng) {
  return widest_vacancy(true_state, rng);
}

// ---------------------------------------------------------------------------

void validate_policy_name(std::string_view name, std::size_t d) {
  if (name == "saa" || name == "ts" || name == "bellman" || name == "genie") return;
  if (name.starts_with("fixed:")) {
    (void)Waveform::parse(name.substr(6), d);
    return;
  }
  throw ConfigError("unknown policy '" + std::string(name) +
                    "' (expected saa, ts, bellman, genie or fixed:<start>:<width>)");
}

std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyEnvironment& env) {
  validate_policy_name(name, env.d);
  if (name == "saa") return std::make_unique<SenseAndAvoid>(env.d);
  if (name == "ts") return std::make_unique<ThompsonSamplingPolicy>(env.d, env.ts);
  if (name == "genie") return std::make_unique<GeniePolicy>();
  if (name == "bellman") {
    if (env.states == nullptr || env.transitions == nullptr) {
      throw ConfigError("bellman policy needs the channel's states and transition matrix");
    }
    return std::make_unique<BellmanPolicy>(
        bellman_build(*env.states, *env.transitions, env.loss, env.bellman_alpha));
  }
  return std::make_unique<FixedPolicy>(Waveform::parse(name.substr(6), env.d));
}

}  // namespace cogradar
