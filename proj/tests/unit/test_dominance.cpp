#include <cmath>
#include <functional>
#include <set>

#include "cogradar/dominance.hpp"
#include "cogradar/errors.hpp"
#include "cogradar/policy.hpp"
#include "doctest.h"

using namespace cogradar;

namespace {

const std::vector<OccupancyVector> kDefault{{1, 0, 0, 0, 0}, {0, 0, 0, 0, 1}};

EpisodeTrace synthetic_trace(std::vector<double> losses, std::size_t seed_state = 0) {
  EpisodeTrace t;
  t.initial_state = seed_state;
  t.loss = std::move(losses);
  t.state.assign(t.loss.size(), 0);
  t.observation_missed.assign(t.loss.size(), 0);
  t.state_hash = hash_realization(t.initial_state, t.state, t.observation_missed);
  return t;
}

RegretCurve curve_from(const std::function<double(double)>& f, std::size_t n) {
  RegretCurve c;
  for (std::size_t t = 1; t <= n; ++t) c.cumulative.push_back(f(static_cast<double>(t)));
  return c;
}

}  // namespace

TEST_CASE("transition classes on the default channel") {
  LossParams params;
  const auto saa = saa_action_map(kDefault);
  REQUIRE(saa[0].size() == 1);
  CHECK(saa[0][0].waveform == Waveform(1, 4, 5));
  CHECK(saa[1][0].waveform == Waveform(0, 4, 5));

  const auto cls = classify_transitions(kDefault, TransitionMatrix::two_state(0.5, 0.5), saa, params);
  REQUIRE(cls.collision.size() == 2);
  CHECK(cls.collision[0].from == 0);
  CHECK(cls.collision[0].to == 1);
  CHECK(cls.missed_opportunity.empty());
  REQUIRE(cls.benign.size() == 2);
  for (const auto& t : cls.benign) CHECK(t.from == t.to);
  CHECK(cls.mass(TransitionSet::collision) == doctest::Approx(0.5).epsilon(1e-12));

  const auto still = classify_transitions(kDefault, TransitionMatrix::identity(2), saa, params);
  CHECK(still.collision.empty());
  CHECK(still.missed_opportunity.empty());
  CHECK(still.mass(TransitionSet::benign) == doctest::Approx(1.0).epsilon(1e-12));

  // Period-2 chains are accepted: the whole mass is on collisions.
  const auto swap = classify_transitions(kDefault, TransitionMatrix::two_state(1.0, 1.0), saa, params);
  CHECK(swap.mass(TransitionSet::collision) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(classify_transitions(kDefault, TransitionMatrix::identity(2),
                                       ActionMap{saa[0]}, params),
                  ConfigError);
}

TEST_CASE("missed-opportunity transitions are detected") {
  LossParams params;
  // After state 0 the rule plays 1:3, which is narrower than state 1's vacancy.
  const std::vector<OccupancyVector> states{{1, 0, 0, 0, 1}, {1, 0, 0, 0, 0}};
  const auto cls = classify_transitions(states, TransitionMatrix::two_state(0.5, 0.5),
                                        saa_action_map(states), params);
  REQUIRE(cls.missed_opportunity.size() == 1);
  CHECK(cls.missed_opportunity[0].from == 0);
  CHECK(cls.missed_opportunity[0].to == 1);
  REQUIRE(cls.collision.size() == 1);
  CHECK(cls.collision[0].from == 1);
}

TEST_CASE("partition property on random channels with ties") {
  Rng rng(5);
  LossParams params;
  std::bernoulli_distribution bit(0.4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = 3 + static_cast<std::size_t>(rep % 5);
    std::vector<OccupancyVector> states;
    std::set<std::vector<std::uint8_t>> seen;
    while (states.size() < 3) {
      std::vector<std::uint8_t> bits(d);
      for (auto& b : bits) b = bit(rng) ? 1 : 0;
      if (seen.insert(bits).second) states.emplace_back(bits);
    }
    std::vector<std::vector<double>> rows(3, std::vector<double>(3));
    for (auto& r : rows) {
      double s = 0.0;
      for (double& v : r) s += (v = (u(rng) < 0.25 ? 0.0 : u(rng)));
      if (s == 0.0) r[0] = s = 1.0;
      for (double& v : r) v /= s;
    }
    const TransitionMatrix p(rows);
    const auto map = saa_action_map(states);
    const auto cls = classify_transitions(states, p, map, params);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) expected += p(i, j) > 0.0 ? map[i].size() : 0;
    }
    CHECK(cls.size() == expected);
    const double total = cls.mass(TransitionSet::collision) +
                         cls.mass(TransitionSet::missed_opportunity) +
                         cls.mass(TransitionSet::benign);
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("analytic average cost") {
  LossParams params;
  const auto saa = saa_action_map(kDefault);
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(analytic_average_cost(kDefault, TransitionMatrix::two_state(p, p), saa, params) ==
          doctest::Approx(p).epsilon(1e-10));
    const auto middle = deterministic_action_map({Waveform(1, 3, 5), Waveform(1, 3, 5)});
    CHECK(analytic_average_cost(kDefault, TransitionMatrix::two_state(p, p), middle, params) ==
          doctest::Approx(params.eta).epsilon(1e-10));
  }
  CHECK(analytic_average_cost(kDefault, TransitionMatrix::identity(2), saa, params) == 0.0);
  CHECK_THROWS_AS(analytic_average_cost(kDefault, TransitionMatrix::two_state(1, 1), saa, params),
                  NumericError);
  CHECK(analytic_average_cost(kDefault, TransitionMatrix::two_state(1, 1), saa, params, true) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("empirical CDF") {
  const std::vector<double> s{0, 0, 1, 1};
  const EmpiricalCdf f(s);
  CHECK(f(0.0) == 0.5);
  CHECK(f(1.0) == 1.0);
  CHECK(f(-0.1) == 0.0);
  CHECK(f.survival(0.5) == 0.5);
  CHECK(f.survival(0.0) == 1.0);
  const std::vector<double> c{0.3, 0.3, 0.3};
  const EmpiricalCdf g(c);
  CHECK(g.support().size() == 1);
  CHECK(g(0.29) == 0.0);
  CHECK(g(0.3) == 1.0);
  CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), ConfigError);

  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> big(100'000);
  for (double& v : big) v = u(rng);
  const EmpiricalCdf h(big);
  double sup = 0.0;
  for (std::size_t k = 0; k < h.support().size(); ++k) {
    const double x = h.support()[k];
    const double below = k == 0 ? 0.0 : h.cumulative()[k - 1];
    sup = std::max({sup, std::abs(h.cumulative()[k] - x), std::abs(below - x)});
  }
  CHECK(sup < 0.01);
}

TEST_CASE("first-order dominance examples") {
  const EmpiricalCdf zeros(std::vector<double>{0, 0, 0});
  const EmpiricalCdf ones(std::vector<double>{1, 1});
  CHECK(first_order_dominates(zeros, ones) == DominanceVerdict::dominates);
  CHECK(first_order_dominates(ones, zeros) == DominanceVerdict::dominated);
  CHECK(first_order_dominates(ones, ones) == DominanceVerdict::equal);

  const EmpiricalCdf coin(std::vector<double>{0, 1});
  const EmpiricalCdf half(std::vector<double>{0.5});
  // Survivals at 0.25: 0.5 vs 1; at 0.75: 0.5 vs 0. They cross.
  CHECK(coin.survival(0.25) < half.survival(0.25));
  CHECK(coin.survival(0.75) > half.survival(0.75));
  CHECK(first_order_dominates(coin, half) == DominanceVerdict::incomparable);
}

TEST_CASE("second-order dominance examples") {
  const EmpiricalCdf coin(std::vector<double>{0, 1});
  const EmpiricalCdf half(std::vector<double>{0.5});
  // Upper-tail integral of F_half - F_coin: 0.5 x on [0, 0.5], 0.5 (1 - x) on
  // [0.5, 1], zero elsewhere. Nonnegative and positive inside.
  CHECK(second_order_dominates(half, coin) == DominanceVerdict::dominates);
  CHECK(second_order_dominates(coin, half) == DominanceVerdict::dominated);
  CHECK(second_order_dominates(coin, coin) == DominanceVerdict::equal);

  const EmpiricalCdf zeros(std::vector<double>{0, 0});
  const EmpiricalCdf ones(std::vector<double>{1});
  CHECK(second_order_dominates(zeros, ones) == DominanceVerdict::dominates);
}

TEST_CASE("dominance predicates on random CDF pairs") {
  Rng rng(2718);
  std::uniform_int_distribution<int> level(0, 10);
  std::uniform_int_distribution<int> size(5, 60);
  std::bernoulli_distribution shift(0.5);
  int fsd_pairs = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(static_cast<std::size_t>(size(rng)));
    for (double& v : a) v = level(rng) / 10.0;
    std::vector<double> b;
    if (rep % 2 == 0) {
      // b is a pointwise-worse copy of a, so a first-order dominates b.
      b = a;
      for (double& v : b) v = std::min(1.0, v + (shift(rng) ? 0.1 : 0.0));
    } else {
      b.resize(static_cast<std::size_t>(size(rng)));
      for (double& v : b) v = level(rng) / 10.0;
    }
    const EmpiricalCdf fa(a);
    const EmpiricalCdf fb(b);
    const auto fsd = first_order_dominates(fa, fb);
    const auto fsd_rev = first_order_dominates(fb, fa);
    const auto ssd = second_order_dominates(fa, fb);
    const auto ssd_rev = second_order_dominates(fb, fa);
    CHECK_FALSE((fsd == DominanceVerdict::dominates && fsd_rev == DominanceVerdict::dominates));
    CHECK_FALSE((ssd == DominanceVerdict::dominates && ssd_rev == DominanceVerdict::dominates));
    if (fsd == DominanceVerdict::dominates) {
      ++fsd_pairs;
      CHECK(ssd == DominanceVerdict::dominates);
      CHECK(fsd_rev == DominanceVerdict::dominated);
    }
    CHECK(first_order_dominates(fa, fa) == DominanceVerdict::equal);
    CHECK(second_order_dominates(fa, fa) == DominanceVerdict::equal);
  }
  CHECK(fsd_pairs >= 50);
}

TEST_CASE("statewise dominance") {
  LossParams params;
  const auto p = TransitionMatrix::two_state(0.5, 0.5);
  const auto saa = expected_state_losses(kDefault, p, saa_action_map(kDefault), params);
  const std::vector<double> genie{0.0, 0.0};
  CHECK(saa[0] == doctest::Approx(0.5));
  CHECK(statewise_dominates(genie, saa));
  CHECK_FALSE(statewise_dominates(saa, genie));
  CHECK(statewise_dominates(saa, saa));

  const auto table = bellman_build(kDefault, p, params, 0.9);
  const auto bellman = expected_state_losses(kDefault, p, deterministic_action_map(table.action), params);
  CHECK(bellman[0] == doctest::Approx(params.eta));
  CHECK_FALSE(statewise_dominates(bellman, genie));
  CHECK(statewise_dominates(bellman, saa));
  CHECK_THROWS_AS(statewise_dominates(genie, std::vector<double>{0.0}), ConfigError);
}

TEST_CASE("regret curves") {
  const auto genie = synthetic_trace({0, 0, 0, 0});
  const auto policy = synthetic_trace({1, 0, 0.5, 1});
  const auto curve = regret_curve(policy, genie);
  CHECK(curve.cumulative == std::vector<double>{1, 1, 1.5, 2.5});
  const auto self = regret_curve(genie, genie);
  CHECK(self.cumulative == std::vector<double>{0, 0, 0, 0});
  CHECK_THROWS_AS(regret_curve(synthetic_trace({1, 0}), genie), ConfigError);
  CHECK_THROWS_AS(regret_curve(synthetic_trace({1, 0, 0, 0}, 1), genie), ConfigError);
}

TEST_CASE("linearity diagnostic") {
  const auto linear = linearity_diagnostic(curve_from([](double t) { return 0.3 * t; }, 1000));
  CHECK(linear.slope == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(linear.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linear.doubling_ratio == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(linear.degenerate);

  const auto root = linearity_diagnostic(curve_from([](double t) { return std::sqrt(t); }, 1000));
  CHECK(root.doubling_ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto flat = linearity_diagnostic(curve_from([](double) { return 0.0; }, 200));
  CHECK(flat.degenerate);
  CHECK(flat.slope == 0.0);
  CHECK(std::isnan(flat.r_squared));

  CHECK_THROWS_AS(linearity_diagnostic(curve_from([](double t) { return t; }, 99)), ConfigError);
}
