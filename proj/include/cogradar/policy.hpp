#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cogradar/loss.hpp"
#include "cogradar/markov_channel.hpp"
#include "cogradar/occupancy.hpp"
#include "cogradar/rng.hpp"
#include "cogradar/waveform.hpp"

namespace cogradar {

enum class PolicyKind { saa, ts, bellman, genie, fixed };

/// Ground truth the simulator exposes at decision time. Only the oracle
/// policies read it: the genie uses the state it is about to be scored
/// against, the Bellman oracle uses the previous state index.
struct DecisionContext {
  const OccupancyVector& true_state;
  std::size_t previous_state;
};

/// What the radar learns after transmitting in a PRI.
struct Feedback {
  const OccupancyVector& observation;
  std::size_t state_index;
  double loss;
};

class Policy {
 public:
  virtual ~Policy() = default;

  virtual PolicyKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual Waveform decide(const DecisionContext& ctx, Rng& rng) = 0;
  /// No-op for the non-learning policies.
  virtual void update(const Feedback& feedback) { (void)feedback; }
};

// ---------------------------------------------------------------------------
// Sense-and-avoid: transmit in the widest vacancy of the last observation.

class SenseAndAvoid final : public Policy {
 public:
  /// The stored observation starts all-zeros, so the first PRI uses the full band.
  explicit SenseAndAvoid(std::size_t d) : last_(OccupancyVector::zeros(d)) {}

  PolicyKind kind() const override { return PolicyKind::saa; }
  std::string name() const override { return "saa"; }

  Waveform decide(Rng& rng) const { return widest_vacancy(last_, rng); }
  Waveform decide(const DecisionContext&, Rng& rng) override { return decide(rng); }

  void observe(const OccupancyVector& o);
  void update(const Feedback& feedback) override { observe(feedback.observation); }

  const OccupancyVector& last_observation() const { return last_; }

 private:
  OccupancyVector last_;
};

// ---------------------------------------------------------------------------
// Thompson Sampling over the waveform catalog with one Bayesian linear
// regression of loss on the context x = [o; 1] per arm.

struct TsHyperparameters {
  double prior_precision = 1.0;  // A_k starts at prior_precision * I
  double noise_variance = 0.25;  // sigma^2
};

class ThompsonSampling {
 public:
  ThompsonSampling(std::size_t d, TsHyperparameters hyper = {});

  std::size_t d() const { return d_; }
  std::size_t num_arms() const { return arms_.size(); }
  const std::vector<Waveform>& catalog() const { return catalog_; }
  const TsHyperparameters& hyperparameters() const { return hyper_; }

  /// Draws theta_k ~ N(A_k^-1 b_k, sigma^2 A_k^-1) for each arm and returns the
  /// arm minimising x^T theta_k (lowest index on ties). Only the scalar
  /// x^T theta_k enters the decision, so it is drawn directly from its
  /// marginal N(x^T m_k, sigma^2 x^T A_k^-1 x).
  std::size_t decide(const OccupancyVector& context, Rng& rng);

  /// A_k += x x^T, b_k += loss * x for the chosen arm only. Throws
  /// ConfigError for an arm out of range or a loss outside [0,1].
  void update(const OccupancyVector& context, std::size_t arm, double observed_loss);

  /// Posterior mean prediction x^T A_k^-1 b_k.
  double predicted_loss(std::size_t arm, const OccupancyVector& context) const;

  const Eigen::MatrixXd& precision(std::size_t arm) const { return arms_.at(arm).precision; }
  const Eigen::VectorXd& response(std::size_t arm) const { return arms_.at(arm).response; }

 private:
  struct ArmPosterior {
    Eigen::MatrixXd precision;   // A_k
    Eigen::VectorXd response;    // b_k
    Eigen::MatrixXd covariance;  // A_k^-1
    Eigen::VectorXd mean;        // A_k^-1 b_k
  };

  Eigen::VectorXd features(const OccupancyVector& context) const;

  std::size_t d_;
  TsHyperparameters hyper_;
  std::vector<Waveform> catalog_;
  std::vector<ArmPosterior> arms_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

class ThompsonSamplingPolicy final : public Policy {
 public:
  ThompsonSamplingPolicy(std::size_t d, TsHyperparameters hyper = {});

  PolicyKind kind() const override { return PolicyKind::ts; }
  std::string name() const override { return "ts"; }
  Waveform decide(const DecisionContext& ctx, Rng& rng) override;
  /// Credits the realized loss to the arm played under the context it was
  /// chosen with, then stores the new observation as the next context.
  void update(const Feedback& feedback) override;

  const ThompsonSampling& model() const { return model_; }

 private:
  ThompsonSampling model_;
  OccupancyVector context_;
  std::size_t last_arm_ = 0;
  bool pending_ = false;
};

// ---------------------------------------------------------------------------
// Bellman oracle. Built from the true transition matrix, so it is an
// analysis bound rather than a contestant.

struct BellmanTable {
  std::vector<Waveform> action;                    // per state index
  std::vector<std::vector<double>> expected_cost;  // [state][arm], one-step
  std::vector<double> value;
  double alpha = 0.0;
  std::size_t iterations = 0;
};

/// Discounted value iteration over states with one-step cost
/// sum_j p_ij * loss(s_j, w), stopped when the value change drops below
/// 1e-10. Throws ConfigError unless 0 <= alpha < 1, NumericError if value
/// iteration fails to settle.
BellmanTable bellman_build(const std::vector<OccupancyVector>& states,
                           const TransitionMatrix& transitions, const LossParams& params,
                           double alpha);
BellmanTable bellman_build(const MarkovChannel& channel, const LossParams& params,
                           double alpha);

class BellmanPolicy final : public Policy {
 public:
  explicit BellmanPolicy(BellmanTable table) : table_(std::move(table)) {}

  PolicyKind kind() const override { return PolicyKind::bellman; }
  std::string name() const override { return "bellman"; }
  Waveform decide(const DecisionContext& ctx, Rng&) override {
    return table_.action.at(ctx.previous_state);
  }
  const BellmanTable& table() const { return table_; }

 private:
  BellmanTable table_;
};

// ---------------------------------------------------------------------------
// Comparators.

/// Widest vacancy of the true current state.
Waveform genie_decide(const OccupancyVector& true_state, Rng& rng);

class GeniePolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::genie; }
  std::string name() const override { return "genie"; }
  Waveform decide(const DecisionContext& ctx, Rng& rng) override {
    return genie_decide(ctx.true_state, rng);
  }
};

class FixedPolicy final : public Policy {
 public:
  explicit FixedPolicy(Waveform w) : waveform_(w) {}

  PolicyKind kind() const override { return PolicyKind::fixed; }
  std::string name() const override { return "fixed:" + waveform_.to_string(); }
  Waveform decide(const DecisionContext&, Rng&) override { return waveform_; }
  const Waveform& waveform() const { return waveform_; }

 private:
  Waveform waveform_;
};

// ---------------------------------------------------------------------------

/// Everything needed to instantiate a policy from its CLI name.
struct PolicyEnvironment {
  std::size_t d = 5;
  const std::vector<OccupancyVector>* states = nullptr;  // bellman only
  const TransitionMatrix* transitions = nullptr;         // bellman only
  LossParams loss;
  TsHyperparameters ts;
  double bellman_alpha = 0.9;
};

/// Validates a CLI policy name: saa, ts, bellman, genie or fixed:<start>:<width>.
void validate_policy_name(std::string_view name, std::size_t d);

/// Throws ConfigError for an unknown name.
std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyEnvironment& env);

}  // namespace cogradar
