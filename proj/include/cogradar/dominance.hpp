#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cogradar/loss.hpp"
#include "cogradar/markov_channel.hpp"
#include "cogradar/trace.hpp"
#include "cogradar/waveform.hpp"

namespace cogradar {

// ---------------------------------------------------------------------------
// Fixed decision rules as per-state action maps.

struct WeightedAction {
  Waveform waveform;
  double weight = 1.0;
};

/// action_map[i] lists the waveforms the rule plays after state i, with
/// probabilities summing to 1 (several entries when ties are broken at random).
using ActionMap = std::vector<std::vector<WeightedAction>>;

/// Sense-and-avoid under perfect observation: widest vacancy of s_i, each
/// tied run weighted equally.
ActionMap saa_action_map(const std::vector<OccupancyVector>& states);

/// One deterministic waveform per state.
ActionMap deterministic_action_map(const std::vector<Waveform>& actions);

enum class TransitionSet { collision, missed_opportunity, benign };

struct ClassifiedTransition {
  std::size_t from = 0;
  std::size_t to = 0;
  Waveform action;
  double mass = 0.0;  // mu_i * p_ij * tie weight
  TransitionSet set = TransitionSet::benign;
};

/// Partition of the supported transitions (p_ij > 0) by what playing the
/// rule's action for s_i does in s_j: collide (A), miss an opportunity
/// without colliding (B), or neither (C).
struct TransitionClass {
  std::vector<ClassifiedTransition> collision;           // A
  std::vector<ClassifiedTransition> missed_opportunity;  // B
  std::vector<ClassifiedTransition> benign;              // C
  std::vector<double> stationary;

  std::size_t size() const {
    return collision.size() + missed_opportunity.size() + benign.size();
  }
  double mass(TransitionSet set) const;
};

/// Stationary weights come from the lazy-chain iteration, so periodic
/// chains are accepted. Throws ConfigError when the map does not cover
/// every state.
TransitionClass classify_transitions(const std::vector<OccupancyVector>& states,
                                     const TransitionMatrix& transitions,
                                     const ActionMap& policy, const LossParams& params);

/// Expected loss of the rule's action after each state:
/// l(i) = sum_j p_ij * sum_a weight_a * loss(s_j, a).
std::vector<double> expected_state_losses(const std::vector<OccupancyVector>& states,
                                          const TransitionMatrix& transitions,
                                          const ActionMap& policy, const LossParams& params);

/// Long-term average cost lambda = sum_i mu_i * l(i). With cesaro == false
/// stationary_distribution errors propagate; with cesaro == true the lazy
/// chain is used instead.
double analytic_average_cost(const std::vector<OccupancyVector>& states,
                             const TransitionMatrix& transitions, const ActionMap& policy,
                             const LossParams& params, bool cesaro = false);

// ---------------------------------------------------------------------------
// Distributional comparisons. Every statistic is a cost: lower is better.

class EmpiricalCdf {
 public:
  /// Throws ConfigError on empty input or non-finite samples.
  explicit EmpiricalCdf(std::span<const double> samples);

  /// F(x) = P(X <= x), right-continuous.
  double operator()(double x) const;
  /// P(X >= x).
  double survival(double x) const;

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  std::size_t sample_count() const { return count_; }
  double mean() const { return mean_; }

 private:
  std::vector<double> support_;
  std::vector<double> cumulative_;
  std::size_t count_ = 0;
  double mean_ = 0.0;
};

enum class DominanceVerdict { dominates, dominated, incomparable, equal };

std::string to_string(DominanceVerdict v);

inline constexpr double kDominanceTolerance = 1e-9;

/// Checks P(l1 >= x) <= P(l2 >= x) on the merged support, which is where
/// the survival functions change. "dominates" needs strict improvement by
/// more than tol at some x.
DominanceVerdict first_order_dominates(const EmpiricalCdf& f1, const EmpiricalCdf& f2,
                                       double tol = kDominanceTolerance);

/// Second-order (risk-averse) dominance for costs: the upper-tail integral
/// G(x) = int_x^inf [F1(t) - F2(t)] dt must be >= -tol everywhere and
/// > tol somewhere. The step CDFs are integrated exactly, and G is linear
/// between support points, so checking the merged grid is sufficient.
DominanceVerdict second_order_dominates(const EmpiricalCdf& f1, const EmpiricalCdf& f2,
                                        double tol = kDominanceTolerance);

/// True iff loss_1[s] <= loss_2[s] for every state. Throws ConfigError on
/// mismatched lengths.
bool statewise_dominates(std::span<const double> loss_by_state_1,
                         std::span<const double> loss_by_state_2);

// ---------------------------------------------------------------------------
// Regret against the genie on a coupled realization.

struct RegretCurve {
  std::vector<double> cumulative;  // r_t, t = 1..n
};

/// Throws ConfigError when the traces differ in length or realization hash.
RegretCurve regret_curve(const EpisodeTrace& policy, const EpisodeTrace& genie);

struct LinearityDiagnostic {
  double slope = 0.0;
  double r_squared = 0.0;       // NaN for a degenerate (all-zero) curve
  double doubling_ratio = 0.0;  // r_n / r_{n/2}; NaN when r_{n/2} == 0
  bool degenerate = false;
};

/// Least-squares line of r_t against t. Throws ConfigError for n < 100.
LinearityDiagnostic linearity_diagnostic(const RegretCurve& curve);

}  // namespace cogradar
