// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lgcalab/wsccs.hpp"

using namespace lgcalab;
using namespace lgcalab::wsccs;

namespace {

double binomial_pmf(int n, int k, double p) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

}  // namespace

TEST_CASE("agent definitions are validated") {
  CHECK_NOTHROW(ant_colony(0.3));
  CHECK_THROWS_AS(AgentSystem({{"A", {{0.5, kTick, "A"}}}}), std::invalid_argument);
  CHECK_THROWS_AS(AgentSystem({{"A", {{1.0, kTick, "B"}}}}), std::invalid_argument);
  CHECK_THROWS_AS(AgentSystem({{"A", {{1.0, "send", "A"}}}}), std::invalid_argument);
  CHECK_THROWS_AS(AgentSystem({{"A", {{0.0, kTick, "A"}, {1.0, kTick, "A"}}}}), std::invalid_argument);
  CHECK_THROWS_AS(ant_colony(0.0), std::invalid_argument);
}

TEST_CASE("one tick of small products") {
  const AgentSystem sys = ant_colony(0.3);
  auto one_active = compose_step(sys, {{"Active", 1}});
  CHECK(one_active.size() == 2);
  CHECK(one_active[{{"Passive", 1}}] == doctest::Approx(0.3));
  CHECK(one_active[{{"Active", 1}}] == doctest::Approx(0.7));
  auto passive = compose_step(sys, {{"Passive", 1}});
  CHECK(passive.size() == 1);
  CHECK(passive[{{"Passive", 1}}] == 1.0);

  auto two = compose_step(ant_colony(0.5), {{"Active", 2}});
  CHECK(two[{{"Active", 2}}] == doctest::Approx(0.25));
  CHECK(two[{{"Active", 1}, {"Passive", 1}}] == doctest::Approx(0.5));
  CHECK(two[{{"Passive", 2}}] == doctest::Approx(0.25));

  CHECK_THROWS_AS(compose_step(sys, {{"Queen", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(compose_step(sys, {{"Active", 17}}), std::invalid_argument);
}

TEST_CASE("colony chain") {
  const TransitionMatrix c = colony_matrix(2, 0.5);
  CHECK(c.states == std::vector<int>{0, 1, 2});
  CHECK(c.p(0, 0) == 1.0);
  CHECK(c.p(0, 1) == 0.0);
  CHECK(c.p(2, 0) == doctest::Approx(0.25));
  CHECK(c.p(2, 1) == doctest::Approx(0.5));
  CHECK(c.p(2, 2) == doctest::Approx(0.25));
  CHECK_THROWS_AS(colony_matrix(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(colony_matrix(3, 1.0), std::invalid_argument);

  // Large rows stay finite and stochastic.
  const TransitionMatrix big = colony_matrix(1500, 0.01);
  CHECK_NOTHROW(validate(big));
  CHECK(big.p(1500, 1485) == doctest::Approx(binomial_pmf(1500, 1485, 0.99)).epsilon(1e-9));
}

TEST_CASE("binomial chain matches the product expansion") {
  for (int n = 1; n <= 4; ++n)
    for (double p : {0.2, 0.5, 0.9}) {
      const TransitionMatrix c = colony_matrix(n, p);
      for (int i = 0; i <= n; ++i) {
        const auto row = colony_step_by_expansion(n, i, p);
        for (int k = 0; k <= n; ++k)
          CHECK(std::abs(row[static_cast<std::size_t>(k)] -
                         c.p(static_cast<std::size_t>(i), static_cast<std::size_t>(k))) < 1e-12);
      }
    }
}

TEST_CASE("simulated paths") {
  const TransitionMatrix c = colony_matrix(5, 0.3);
  const Trajectories from_zero = simulate(c, 0, 20, 50, 1);
  for (int r = 0; r < 50; ++r)
    for (int t = 0; t <= 20; ++t) CHECK(from_zero.at(r, t) == 0);

  const Trajectories a = simulate(c, 5, 30, 400, 7, 1);
  CHECK(a.states == simulate(c, 5, 30, 400, 7, 3).states);
  CHECK_FALSE(a.states == simulate(c, 5, 30, 400, 8, 1).states);
  for (int r = 0; r < 400; ++r)
    for (int t = 0; t < 30; ++t) CHECK(a.at(r, t + 1) <= a.at(r, t));

  const int trials = 100000;
  const Trajectories one = simulate(c, 5, 1, trials, 11);
  std::vector<int> counts(6);
  double mean = 0.0;
  for (int r = 0; r < trials; ++r) {
    ++counts[static_cast<std::size_t>(one.at(r, 1))];
    mean += one.at(r, 1);
  }
  mean /= trials;
  for (int k = 0; k <= 5; ++k) {
    const double pk = c.p(5, static_cast<std::size_t>(k));
    const double sigma = std::sqrt(trials * pk * (1 - pk));
    CHECK(std::abs(counts[static_cast<std::size_t>(k)] - trials * pk) <= 3 * sigma);
  }
  // E[A_1] = 5 (1 - p), variance 5 p (1 - p).
  CHECK(std::abs(mean - 3.5) <= 3 * std::sqrt(5 * 0.3 * 0.7 / trials));
}

TEST_CASE("chi-square agreement of A_t histograms with matrix powers") {
  const TransitionMatrix c = colony_matrix(6, 0.2);
  const int trials = 20000, t = 4;
  const Trajectories paths = simulate(c, 6, t, trials, 21);
  const ChainAnalysis exact = analyze(c, 6, t);
  std::vector<double> counts(7);
  for (int r = 0; r < trials; ++r) counts[static_cast<std::size_t>(paths.at(r, t))] += 1.0;
  double chi2 = 0.0;
  int dof = -1;
  for (std::size_t k = 0; k < 7; ++k) {
    const double expected = trials * exact.distribution[t][k];
    if (expected < 5.0) continue;
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
    ++dof;
  }
  REQUIRE(dof == 6);
  // Upper 1% point of chi-square with 6 degrees of freedom.
  CHECK(chi2 < 16.812);
}

TEST_CASE("exact analysis") {
  const TransitionMatrix c = colony_matrix(4, 0.35);
  const ChainAnalysis a = analyze(c, 4, 1000);
  for (const auto& d : a.distribution) {
    double s = 0.0;
    for (double v : d) s += v;
    CHECK(std::abs(s - 1.0) < 1e-10);
  }
  CHECK(a.distribution.back()[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.expected_hitting_time[0] == 0.0);

  // Mean decays geometrically: E[A_t] = 4 (1 - p)^t.
  for (int t = 0; t <= 10; ++t) {
    double mean = 0.0;
    for (std::size_t k = 0; k < 5; ++k) mean += static_cast<double>(k) * a.distribution[static_cast<std::size_t>(t)][k];
    CHECK(mean == doctest::Approx(4.0 * std::pow(0.65, t)).epsilon(1e-12));
  }

  for (double p : {0.1, 0.5, 0.8}) {
    const ChainAnalysis single = analyze(colony_matrix(1, p), 1, 1);
    CHECK(single.expected_hitting_time[1] == doctest::Approx(1.0 / p).epsilon(1e-12));
  }
  // Absorption of n independent geometric clocks: E[max] by inclusion-exclusion.
  const double p = 0.35;
  double expected_max = 0.0;
  for (int j = 1; j <= 4; ++j)
    expected_max += (j % 2 ? 1.0 : -1.0) * binomial_pmf(4, j, 0.5) * 16.0 / (1.0 - std::pow(1 - p, j));
  CHECK(a.expected_hitting_time[4] == doctest::Approx(expected_max).epsilon(1e-10));
}
