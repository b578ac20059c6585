#include "cogradar/markov_channel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cogradar/errors.hpp"

namespace cogradar {

namespace {

constexpr double kStationaryTolerance = 1e-12;
constexpr int kStationaryMaxIterations = 1'000'000;

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> multiply(const std::vector<double>& mu, const TransitionMatrix& p) {
  const std::size_t n = p.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += mu[i] * p(i, j);
  }
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void normalize(std::vector<double>& mu) {
  double total = 0.0;
  for (double v : mu) total += v;
  for (double& v : mu) v /= total;
}

// Start away from the uniform vector, which is a fixed point of every
// doubly-stochastic matrix including the periodic ones.
std::vector<double> generic_start(std::size_t n) {
  std::vector<double> mu(n);
  for (std::size_t i = 0; i < n; ++i) mu[i] = static_cast<double>(i + 1);
  normalize(mu);
  return mu;
}

}  // namespace

TransitionMatrix::TransitionMatrix(std::vector<std::vector<double>> rows) : n_(rows.size()) {
  if (n_ == 0) throw ConfigError("transition matrix is empty");
  entries_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw ConfigError("transition matrix row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(n_));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double p = rows[i][j];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("transition probability p[" + std::to_string(i) + "][" +
                          std::to_string(j) + "] = " + format_double(p) + " is outside [0,1]");
      }
      sum += p;
      entries_.push_back(p);
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw ConfigError("row " + std::to_string(i) + " sums to " + format_double(sum));
    }
  }
}

TransitionMatrix TransitionMatrix::two_state(double p12, double p21) {
  return TransitionMatrix({{1.0 - p12, p12}, {p21, 1.0 - p21}});
}

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return TransitionMatrix(std::move(rows));
}

std::vector<std::vector<double>> TransitionMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

ObservationModel::ObservationModel(double p) : p_miss(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p_miss must lie in [0,1]");
}

MarkovChannel::MarkovChannel(std::vector<OccupancyVector> states, TransitionMatrix transitions,
                             std::size_t initial)
    : states_(std::move(states)), transitions_(std::move(transitions)), current_(initial) {
  if (states_.empty()) throw ConfigError("channel state list is empty");
  const std::size_t d = states_.front().size();
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].size() != d) {
      throw ConfigError("state " + std::to_string(i) + " has dimension " +
                        std::to_string(states_[i].size()) + ", expected " + std::to_string(d));
    }
    if (!seen.insert(states_[i].bits()).second) {
      throw ConfigError("duplicate channel state " + states_[i].to_string());
    }
  }
  if (transitions_.size() != states_.size()) {
    throw ConfigError("transition matrix is " + std::to_string(transitions_.size()) + "x" +
                      std::to_string(transitions_.size()) + " but there are " +
                      std::to_string(states_.size()) + " states");
  }
  if (current_ >= states_.size()) throw ConfigError("initial state index out of range");
}

MarkovChannel MarkovChannel::build(std::vector<OccupancyVector> states,
                                   TransitionMatrix transitions,
                                   std::optional<std::size_t> initial, Rng& rng) {
  std::size_t start = 0;
  if (initial) {
    start = *initial;
  } else if (!states.empty()) {
    start = std::uniform_int_distribution<std::size_t>(0, states.size() - 1)(rng);
  }
  return MarkovChannel(std::move(states), std::move(transitions), start);
}

std::size_t MarkovChannel::step(Rng& rng) {
  const auto row = transitions_.row(current_);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  std::size_t next = row.size() - 1;
  for (std::size_t j = 0; j < row.size(); ++j) {
    cumulative += row[j];
    if (u < cumulative) {
      next = j;
      break;
    }
  }
  // Rounding can leave u above the final cumulative sum; never land on a
  // zero-probability state.
  while (row[next] == 0.0 && next > 0) --next;
  current_ = next;
  return current_;
}

OccupancyVector MarkovChannel::observe(const ObservationModel& model, Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < model.p_miss) return OccupancyVector::zeros(d());
  return current_state();
}

void MarkovChannel::reset(std::size_t index) {
  if (index >= states_.size()) throw ConfigError("state index out of range");
  current_ = index;
}

std::vector<double> stationary_distribution(const TransitionMatrix& transitions) {
  const std::size_t n = transitions.size();
  std::vector<double> prev = generic_start(n);
  std::vector<double> mu = prev;
  for (int it = 0; it < kStationaryMaxIterations; ++it) {
    std::vector<double> next = multiply(mu, transitions);
    if (max_abs_diff(next, mu) < kStationaryTolerance) {
      normalize(next);
      return next;
    }
    // A period-2 orbit returns exactly to the iterate from two steps back
    // while the one-step residual stays large.
    if (it > 0 && max_abs_diff(next, prev) < 1e-15 && max_abs_diff(next, mu) > 1e-9) {
      throw NumericError("stationary distribution: power iteration oscillates (periodic chain)");
    }
    prev = std::move(mu);
    mu = std::move(next);
  }
  throw NumericError("stationary distribution: no convergence within 1e6 iterations");
}

std::vector<double> stationary_distribution_cesaro(const TransitionMatrix& transitions) {
  const std::size_t n = transitions.size();
  auto rows = transitions.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = 0.5 * rows[i][j] + (i == j ? 0.5 : 0.0);
  }
  // Rows of the lazy chain stay stochastic up to rounding; renormalise
  // before re-validating.
  for (auto& r : rows) {
    double s = 0.0;
    for (double v : r) s += v;
    for (double& v : r) v /= s;
  }
  return stationary_distribution(TransitionMatrix(std::move(rows)));
}

}  // namespace cogradar
