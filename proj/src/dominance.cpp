#include "cogradar/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cogradar/errors.hpp"

namespace cogradar {

ActionMap saa_action_map(const std::vector<OccupancyVector>& states) {
  ActionMap map;
  map.reserve(states.size());
  for (const auto& s : states) {
    const auto candidates = widest_vacancy_candidates(s);
    const double w = 1.0 / static_cast<double>(candidates.size());
    std::vector<WeightedAction> actions;
    for (const auto& c : candidates) actions.push_back({c, w});
    map.push_back(std::move(actions));
  }
  return map;
}

ActionMap deterministic_action_map(const std::vector<Waveform>& actions) {
  ActionMap map;
  map.reserve(actions.size());
  for (const auto& a : actions) map.push_back({{a, 1.0}});
  return map;
}

namespace {

void check_map(const std::vector<OccupancyVector>& states, const TransitionMatrix& transitions,
               const ActionMap& policy) {
  if (transitions.size() != states.size()) {
    throw ConfigError("transition matrix does not match the state list");
  }
  if (policy.size() != states.size()) {
    throw ConfigError("action map covers " + std::to_string(policy.size()) + " of " +
                      std::to_string(states.size()) + " states");
  }
  for (std::size_t i = 0; i < policy.size(); ++i) {
    if (policy[i].empty()) throw ConfigError("action map has no action for state " + std::to_string(i));
  }
}

}  // namespace

double TransitionClass::mass(TransitionSet set) const {
  const auto& v = set == TransitionSet::collision            ? collision
                  : set == TransitionSet::missed_opportunity ? missed_opportunity
                                                             : benign;
  double m = 0.0;
  for (const auto& t : v) m += t.mass;
  return m;
}

TransitionClass classify_transitions(const std::vector<OccupancyVector>& states,
                                     const TransitionMatrix& transitions,
                                     const ActionMap& policy, const LossParams& params) {
  check_map(states, transitions, policy);
  (void)params;  // membership depends only on counts, not on eta
  TransitionClass out;
  out.stationary = stationary_distribution_cesaro(transitions);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const double p = transitions(i, j);
      if (p <= 0.0) continue;
      for (const auto& a : policy[i]) {
        ClassifiedTransition t{i, j, a.waveform, out.stationary[i] * p * a.weight,
                               TransitionSet::benign};
        if (collision_count(a.waveform, states[j]) > 0) {
          t.set = TransitionSet::collision;
          out.collision.push_back(t);
        } else if (missed_opportunity_count(a.waveform, states[j]) > 0) {
          t.set = TransitionSet::missed_opportunity;
          out.missed_opportunity.push_back(t);
        } else {
          out.benign.push_back(t);
        }
      }
    }
  }
  return out;
}

std::vector<double> expected_state_losses(const std::vector<OccupancyVector>& states,
                                          const TransitionMatrix& transitions,
                                          const ActionMap& policy, const LossParams& params) {
  check_map(states, transitions, policy);
  std::vector<double> out(states.size(), 0.0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const double p = transitions(i, j);
      if (p <= 0.0) continue;
      for (const auto& a : policy[i]) out[i] += p * a.weight * loss(a.waveform, states[j], params);
    }
  }
  return out;
}

double analytic_average_cost(const std::vector<OccupancyVector>& states,
                             const TransitionMatrix& transitions, const ActionMap& policy,
                             const LossParams& params, bool cesaro) {
  const auto per_state = expected_state_losses(states, transitions, policy, params);
  const auto mu =
      cesaro ? stationary_distribution_cesaro(transitions) : stationary_distribution(transitions);
  double lambda = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) lambda += mu[i] * per_state[i];
  return lambda;
}

// ---------------------------------------------------------------------------

EmpiricalCdf::EmpiricalCdf(std::span<const double> samples) : count_(samples.size()) {
  if (samples.empty()) throw ConfigError("empirical CDF needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw ConfigError("empirical CDF sample is not finite");
  }
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  const double n = static_cast<double>(count_);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    total += sorted[i];
    if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i]) {
      support_.push_back(sorted[i]);
      cumulative_.push_back(static_cast<double>(i + 1) / n);
    }
  }
  cumulative_.back() = 1.0;
  mean_ = total / n;
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(support_.begin(), support_.end(), x);
  if (it == support_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double EmpiricalCdf::survival(double x) const {
  // P(X >= x) = 1 - P(X < x).
  const auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.begin()) return 1.0;
  return 1.0 - cumulative_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

std::string to_string(DominanceVerdict v) {
  switch (v) {
    case DominanceVerdict::dominates: return "dominates";
    case DominanceVerdict::dominated: return "dominated";
    case DominanceVerdict::incomparable: return "incomparable";
    case DominanceVerdict::equal: return "equal";
  }
  return "incomparable";
}

namespace {

std::vector<double> merged_grid(const EmpiricalCdf& f1, const EmpiricalCdf& f2) {
  std::vector<double> grid;
  grid.reserve(f1.support().size() + f2.support().size());
  std::merge(f1.support().begin(), f1.support().end(), f2.support().begin(), f2.support().end(),
             std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Verdict from differences oriented so that negative favours policy 1.
DominanceVerdict verdict_from(const std::vector<double>& diffs, double tol) {
  bool any_better = false;
  bool any_worse = false;
  for (double v : diffs) {
    if (v < -tol) any_better = true;
    if (v > tol) any_worse = true;
  }
  if (!any_better && !any_worse) return DominanceVerdict::equal;
  if (any_better && !any_worse) return DominanceVerdict::dominates;
  if (any_worse && !any_better) return DominanceVerdict::dominated;
  return DominanceVerdict::incomparable;
}

}  // namespace

DominanceVerdict first_order_dominates(const EmpiricalCdf& f1, const EmpiricalCdf& f2,
                                       double tol) {
  const auto grid = merged_grid(f1, f2);
  std::vector<double> diffs;
  diffs.reserve(grid.size());
  for (double x : grid) diffs.push_back(f1.survival(x) - f2.survival(x));
  return verdict_from(diffs, tol);
}

DominanceVerdict second_order_dominates(const EmpiricalCdf& f1, const EmpiricalCdf& f2,
                                        double tol) {
  const auto grid = merged_grid(f1, f2);
  // G(x_last) = 0; walk down accumulating the constant CDF gap on each cell.
  std::vector<double> diffs(grid.size(), 0.0);
  double g = 0.0;
  for (std::size_t k = grid.size(); k-- > 1;) {
    const double width = grid[k] - grid[k - 1];
    g += (f1(grid[k - 1]) - f2(grid[k - 1])) * width;
    diffs[k - 1] = -g;
  }
  return verdict_from(diffs, tol);
}

bool statewise_dominates(std::span<const double> loss_by_state_1,
                         std::span<const double> loss_by_state_2) {
  if (loss_by_state_1.size() != loss_by_state_2.size()) {
    throw ConfigError("statewise comparison over different state lists");
  }
  constexpr double kRounding = 1e-12;
  for (std::size_t i = 0; i < loss_by_state_1.size(); ++i) {
    if (loss_by_state_1[i] > loss_by_state_2[i] + kRounding) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

RegretCurve regret_curve(const EpisodeTrace& policy, const EpisodeTrace& genie) {
  if (policy.size() != genie.size()) {
    throw ConfigError("regret curve: traces have different lengths (" +
                      std::to_string(policy.size()) + " vs " + std::to_string(genie.size()) + ")");
  }
  if (policy.state_hash != genie.state_hash) {
    throw ConfigError("regret curve: traces come from different channel realizations");
  }
  RegretCurve curve;
  curve.cumulative.reserve(policy.size());
  double r = 0.0;
  for (std::size_t t = 0; t < policy.size(); ++t) {
    r += policy.loss[t] - genie.loss[t];
    curve.cumulative.push_back(r);
  }
  return curve;
}

LinearityDiagnostic linearity_diagnostic(const RegretCurve& curve) {
  const auto& r = curve.cumulative;
  const std::size_t n = r.size();
  if (n < 100) throw ConfigError("linearity diagnostic needs at least 100 points");
  LinearityDiagnostic out;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  double mean_t = 0.0;
  double mean_r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_t += static_cast<double>(i + 1);
    mean_r += r[i];
  }
  mean_t /= static_cast<double>(n);
  mean_r /= static_cast<double>(n);
  double stt = 0.0;
  double str = 0.0;
  double srr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i + 1) - mean_t;
    const double dr = r[i] - mean_r;
    stt += dt * dt;
    str += dt * dr;
    srr += dr * dr;
  }
  out.slope = str / stt;
  if (srr == 0.0) {
    out.degenerate = true;
    out.r_squared = nan;
  } else {
    out.r_squared = (str * str) / (stt * srr);
  }
  const double half = r[n / 2 - 1];
  out.doubling_ratio = half != 0.0 ? r[n - 1] / half : nan;
  return out;
}

}  // namespace cogradar
