#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cogradar/occupancy.hpp"
#include "cogradar/rng.hpp"

namespace cogradar {

/// Row-stochastic |S|x|S| matrix, p(i, j) = P(s_t = j | s_{t-1} = i).
class TransitionMatrix {
 public:
  static constexpr double kRowTolerance = 1e-9;

  TransitionMatrix() = default;
  /// Throws ConfigError for non-square input, entries outside [0,1], or a
  /// row whose sum is off by more than kRowTolerance.
  explicit TransitionMatrix(std::vector<std::vector<double>> rows);

  /// Two-state chain [[1-p12, p12], [p21, 1-p21]].
  static TransitionMatrix two_state(double p12, double p21);
  static TransitionMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

struct ObservationModel {
  double p_miss = 0.0;

  ObservationModel() = default;
  explicit ObservationModel(double p);
};

/// Finite-state Markov interference channel. Transitions do not depend on
/// the radar's waveform; action-dependent kernels would take a waveform
/// argument in step() and are not implemented.
class MarkovChannel {
 public:
  /// Throws ConfigError on an empty or inconsistent state list, a matrix
  /// of the wrong size, or an invalid initial index.
  MarkovChannel(std::vector<OccupancyVector> states, TransitionMatrix transitions,
                std::size_t initial);

  /// `initial` == nullopt draws the initial state uniformly from `rng`.
  static MarkovChannel build(std::vector<OccupancyVector> states, TransitionMatrix transitions,
                             std::optional<std::size_t> initial, Rng& rng);

  /// Advances one PRI and returns the new state index.
  std::size_t step(Rng& rng);

  /// The current state with probability 1 - p_miss, else all zeros.
  OccupancyVector observe(const ObservationModel& model, Rng& rng) const;

  void reset(std::size_t index);

  std::size_t current() const { return current_; }
  const OccupancyVector& current_state() const { return states_[current_]; }
  const std::vector<OccupancyVector>& states() const { return states_; }
  const TransitionMatrix& transitions() const { return transitions_; }
  std::size_t d() const { return states_.front().size(); }

 private:
  std::vector<OccupancyVector> states_;
  TransitionMatrix transitions_;
  std::size_t current_ = 0;
};

/// Power iteration to ||muP - mu||_inf < 1e-12, capped at 10^6 iterations.
/// Throws NumericError when the iterates oscillate (periodic chain) or the
/// cap is reached.
std::vector<double> stationary_distribution(const TransitionMatrix& transitions);

/// Power iteration on the lazy chain (I + P)/2, i.e. the average of two
/// successive iterates. Same fixed points as P and converges for periodic
/// chains such as the deterministic swap.
std::vector<double> stationary_distribution_cesaro(const TransitionMatrix& transitions);

}  // namespace cogradar
