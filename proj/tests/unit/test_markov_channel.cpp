#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "cogradar/errors.hpp"
#include "cogradar/markov_channel.hpp"
#include "doctest.h"

using namespace cogradar;

namespace {

// Direct linear solve of mu (P - I) = 0 with sum(mu) = 1.
std::vector<double> stationary_by_linear_solve(const TransitionMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(j, i) = p(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) - (i == j ? 1.0 : 0.0);
    }
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[n - 1] = 1.0;
  const Eigen::VectorXd mu = a.fullPivLu().solve(rhs);
  return {mu.data(), mu.data() + n};
}

TransitionMatrix random_positive_matrix(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (auto& r : rows) {
    double s = 0.0;
    for (double& v : r) s += (v = u(rng));
    for (double& v : r) v /= s;
  }
  return TransitionMatrix(rows);
}

std::vector<OccupancyVector> two_states() { return {{1, 1, 0, 0}, {0, 0, 1, 1}}; }

}  // namespace

TEST_CASE("build_channel echoes the initial state") {
  MarkovChannel ch(two_states(), TransitionMatrix({{0.7, 0.3}, {0.3, 0.7}}), 0);
  CHECK(ch.current() == 0);
  CHECK(ch.current_state() == OccupancyVector{1, 1, 0, 0});
  CHECK(ch.d() == 4);
}

TEST_CASE("random initial state is uniform over indices") {
  Rng rng(11);
  int zeros = 0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    auto ch = MarkovChannel::build(two_states(), TransitionMatrix::identity(2), std::nullopt, rng);
    zeros += ch.current() == 0 ? 1 : 0;
  }
  CHECK(static_cast<double>(zeros) / kDraws == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("non-stochastic row is reported with its index and sum") {
  try {
    TransitionMatrix({{0.5, 0.4}, {0.3, 0.7}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "row 0 sums to 0.9");
  }
  CHECK_THROWS_AS(TransitionMatrix({{1.2, -0.2}, {0.5, 0.5}}), ConfigError);
  CHECK_THROWS_AS(TransitionMatrix({{1.0, 0.0}}), ConfigError);
}

TEST_CASE("channel construction errors") {
  const auto p = TransitionMatrix::identity(2);
  CHECK_THROWS_AS(MarkovChannel({{1, 0, 0, 0}, {0, 0, 0, 0, 1}}, p, 0), ConfigError);
  CHECK_THROWS_AS(MarkovChannel({}, p, 0), ConfigError);
  CHECK_THROWS_AS(MarkovChannel({{1, 0}, {1, 0}}, p, 0), ConfigError);
  CHECK_THROWS_AS(MarkovChannel(two_states(), TransitionMatrix::identity(3), 0), ConfigError);
  CHECK_THROWS_AS(MarkovChannel(two_states(), p, 2), ConfigError);
}

TEST_CASE("step follows absorbing and swapping rows") {
  Rng rng(3);
  MarkovChannel stay(two_states(), TransitionMatrix::identity(2), 0);
  MarkovChannel swap(two_states(), TransitionMatrix({{0, 1}, {1, 0}}), 0);
  for (int t = 0; t < 1000; ++t) {
    CHECK(stay.step(rng) == 0);
    CHECK(swap.step(rng) == static_cast<std::size_t>((t + 1) % 2));
  }
}

TEST_CASE("empirical transition frequencies converge to P") {
  const TransitionMatrix p({{0.7, 0.3}, {0.3, 0.7}});
  MarkovChannel ch(two_states(), p, 0);
  const auto states_before = ch.states();
  Rng rng(2024);
  double counts[2][2] = {{0, 0}, {0, 0}};
  std::size_t prev = ch.current();
  for (int t = 0; t < 1'000'000; ++t) {
    const std::size_t next = ch.step(rng);
    counts[prev][next] += 1.0;
    prev = next;
  }
  const double from0 = counts[0][0] + counts[0][1];
  CHECK(std::abs(counts[0][1] / from0 - 0.3) < 0.005);
  for (std::size_t i = 0; i < 2; ++i) {
    const double row = counts[i][0] + counts[i][1];
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(counts[i][j] / row - p(i, j)) < 0.01);
  }
  // Only the current index moves.
  CHECK(ch.states() == states_before);
  CHECK(ch.transitions().rows() == p.rows());
}

TEST_CASE("observe applies the miss model") {
  const std::vector<OccupancyVector> states{{1, 0, 0, 1}, {0, 1, 1, 0}};
  Rng rng(5);
  MarkovChannel ch(states, TransitionMatrix::identity(2), 0);
  CHECK_THROWS_AS(ObservationModel(1.5), ConfigError);
  for (std::size_t s = 0; s < states.size(); ++s) {
    ch.reset(s);
    for (int i = 0; i < 100; ++i) CHECK(ch.observe(ObservationModel(0.0), rng) == states[s]);
  }
  ch.reset(0);
  CHECK(ch.observe(ObservationModel(1.0), rng) == OccupancyVector::zeros(4));

  int misses = 0;
  constexpr int kDraws = 100'000;
  for (int i = 0; i < kDraws; ++i) misses += ch.observe(ObservationModel(0.25), rng).any() ? 0 : 1;
  CHECK(std::abs(static_cast<double>(misses) / kDraws - 0.25) < 0.01);
}

TEST_CASE("stationary distribution examples") {
  const auto sym = stationary_distribution(TransitionMatrix({{0.7, 0.3}, {0.3, 0.7}}));
  CHECK(sym[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sym[1] == doctest::Approx(0.5).epsilon(1e-12));

  const TransitionMatrix skew({{0.8, 0.2}, {0.6, 0.4}});
  const auto oracle = stationary_by_linear_solve(skew);
  CHECK(oracle[0] == doctest::Approx(0.75).epsilon(1e-12));
  const auto mu = stationary_distribution(skew);
  CHECK(std::abs(mu[0] - oracle[0]) < 1e-10);
  CHECK(std::abs(mu[1] - oracle[1]) < 1e-10);

  const TransitionMatrix period2({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(stationary_distribution(period2), NumericError);
  const auto lazy = stationary_distribution_cesaro(period2);
  CHECK(lazy[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("stationary distribution residual property on random chains") {
  Rng rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rep % 7);
    const auto p = random_positive_matrix(n, rng);
    const auto mu = stationary_distribution(p);
    double total = 0.0;
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += mu[i] * p(i, j);
      residual = std::max(residual, std::abs(v - mu[j]));
      total += mu[j];
      CHECK(mu[j] >= 0.0);
    }
    CHECK(residual < 1e-9);
    CHECK(std::abs(total - 1.0) < 1e-12);
    const auto oracle = stationary_by_linear_solve(p);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(mu[i] - oracle[i]) < 1e-9);
  }
}
