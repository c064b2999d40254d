// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lgcalab/collision.hpp"
#include "lgcalab/dynamics.hpp"
#include "lgcalab/errors.hpp"
#include "lgcalab/observables.hpp"

using namespace lgcalab;

TEST_CASE("occupation estimates over constant and alternating histories") {
  const Topology t(LatticeKind::Hex6, 4, 4);
  const LatticeState empty(t);
  const LatticeState full(t, std::vector<std::uint8_t>(t.sites(), 0x3f), 0);
  const std::vector<LatticeState> zeros{empty, empty, empty};
  const std::vector<LatticeState> ones{full, full};
  const std::vector<LatticeState> alternating{full, empty, full, empty};

  for (double v : estimate_occupation(zeros, 2, 3).values) CHECK(v == 0.0);
  for (double v : estimate_occupation(ones, 4, 2).values) CHECK(v == 1.0);
  const OccupationField half = estimate_occupation(alternating, 1, 2);
  CHECK(half.cells_x == 4);
  CHECK(half.values.size() == 4u * 4u * 6u);
  for (double v : half.values) CHECK(v == 0.5);
  // The window covers the most recent states only.
  for (double v : estimate_occupation(alternating, 2, 1).values) CHECK(v == 0.0);

  CHECK_THROWS_AS(estimate_occupation(std::vector<LatticeState>{}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_occupation(zeros, 3, 1), std::invalid_argument);
}

TEST_CASE("macroscopic moments") {
  const std::vector<double> half(6, 0.5);
  const MacroCell m = macro_cell(LatticeKind::Hex6, half);
  CHECK(m.rho == doctest::Approx(3.0));
  CHECK(std::abs(m.u.x) < 1e-15);
  CHECK(std::abs(m.u.y) < 1e-15);
  CHECK(m.pxx == doctest::Approx(1.5));
  CHECK(m.pyy == doctest::Approx(1.5));
  CHECK(std::abs(m.pxy) < 1e-15);

  const std::vector<double> one{1, 0, 0, 0, 0, 0};
  const MacroCell e = macro_cell(LatticeKind::Hex6, one, UnitsConfig(0.5, 1.0));
  CHECK(e.rho == 1.0);
  CHECK(e.u.x == doctest::Approx(2.0));
  CHECK(e.u.y == doctest::Approx(0.0));

  const MacroCell none = macro_cell(LatticeKind::Hex6, std::vector<double>(6, 0.0));
  CHECK(none.rho == 0.0);
  CHECK(none.u.x == 0.0);
}

TEST_CASE("equilibrium occupation carries the prescribed mass and momentum") {
  std::mt19937_64 gen(2026);
  std::uniform_real_distribution<double> rho_dist(0.05, 5.95), u_dist(-0.3, 0.3);
  const FhpConstants consts;
  for (int trial = 0; trial < 1000; ++trial) {
    const double rho = rho_dist(gen);
    const Vec2 u{u_dist(gen), u_dist(gen)};
    const auto n = equilibrium_occupation(rho, u, consts);
    double mass = 0, jx = 0, jy = 0;
    for (int k = 0; k < 6; ++k) {
      mass += n[k];
      jx += std::cos(k * M_PI / 3) * n[k];
      jy += std::sin(k * M_PI / 3) * n[k];
    }
    CHECK(std::abs(mass - rho) < 1e-12);
    CHECK(std::abs(jx - rho * u.x) < 1e-12);
    CHECK(std::abs(jy - rho * u.y) < 1e-12);
  }
  for (double v : equilibrium_occupation(3.0, {}, consts)) CHECK(v == doctest::Approx(0.5));
  CHECK(fhp_g(3.0) == 0.0);
  // At rho = 3 the quadratic term vanishes, leaving a linear profile.
  const auto a = equilibrium_occupation(3.0, {0.2, 0.1});
  for (int k = 0; k < 6; ++k)
    CHECK(a[k] == doctest::Approx(0.5 + (3.0 / 3.0) *
                                            (std::cos(k * M_PI / 3) * 0.2 + std::sin(k * M_PI / 3) * 0.1)));
  CHECK_THROWS_AS(equilibrium_occupation(6.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(equilibrium_occupation(0.0, {}), std::invalid_argument);
}

TEST_CASE("pressure and viscosity predictors") {
  const FhpConstants c;
  CHECK(c.c4 == 0.75);
  for (double rho : {0.5, 1.0, 2.5, 4.0})
    CHECK(pressure(rho, 0.0) == doctest::Approx(rho / 2.0).epsilon(1e-14));
  for (double u2 : {0.0, 0.01, 0.09}) CHECK(pressure(3.0, u2) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(pressure(2.0, 0.0, FhpConstants(UnitsConfig(1.0, 2.0))) == doctest::Approx(4.0));

  const Viscosity nu = predicted_viscosity(3.0);
  CHECK(fhp_lambda(3.0) == doctest::Approx(0.125));
  CHECK(nu.total == doctest::Approx(1.875).epsilon(1e-14));
  CHECK(nu.lattice == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(nu.collision + nu.lattice == doctest::Approx(nu.total));
  for (int i = 1; i < 600; ++i) {
    const double rho = i * 0.01;
    CHECK(predicted_viscosity(rho).total > 0.0);
    CHECK(predicted_viscosity(rho).lattice == doctest::Approx(-0.125));
  }
  CHECK(predicted_viscosity(3.0, UnitsConfig(0.5, 1.0)).total == doctest::Approx(1.875 * 2.0));
  CHECK_THROWS_AS(predicted_viscosity(6.0), std::invalid_argument);
}

TEST_CASE("block mass changes equal the net flux across block edges") {
  const Topology t(LatticeKind::Hex6, 24, 24);
  const CollisionTable table = build_collision_table(Model::FHP);
  const RandomPolicy rng(8);
  const LatticeState s0 = initialize_bernoulli(t, 2.4, 8);
  const LatticeState s1 = step(s0, table, rng);
  const int block = 6;
  auto block_of = [&](Site s) { return (s.y / block) * (t.width / block) + s.x / block; };
  std::vector<std::int64_t> before(16), after(16), inflow(16), outflow(16);
  for (int y = 0; y < t.height; ++y)
    for (int x = 0; x < t.width; ++x) {
      const Site here{x, y};
      before[block_of(here)] += popcount6(s0.at(here));
      after[block_of(here)] += popcount6(s1.at(here));
      const std::uint8_t post = table.lookup(s0.at(here), rng.q(0, x, y));
      for (int k = 0; k < 6; ++k) {
        if (!((post >> k) & 1)) continue;
        const Site to = neighbor(t, here, k);
        if (block_of(to) != block_of(here)) {
          ++outflow[block_of(here)];
          ++inflow[block_of(to)];
        }
      }
    }
  std::int64_t total_flux = 0;
  for (int b = 0; b < 16; ++b) {
    CHECK(after[b] - before[b] == inflow[b] - outflow[b]);
    total_flux += inflow[b] - outflow[b];
  }
  CHECK(total_flux == 0);
  CHECK(s1.mass() == s0.mass());
}

TEST_CASE("shear-wave probe") {
  ShearWaveConfig cfg;
  cfg.width = 64;
  cfg.height = 64;
  cfg.steps = 600;
  cfg.seed = 5;
  const ShearWaveResult r = measure_viscosity(cfg);
  CHECK(r.mass_conserved);
  CHECK(r.amplitude.size() == cfg.steps + 1);
  CHECK(r.amplitude.front() == doctest::Approx(cfg.u0).epsilon(0.2));
  CHECK(r.nu > 0.0);
  CHECK(r.wavenumber == doctest::Approx(2 * M_PI / (64 * std::sqrt(3.0) / 2)));

  ShearWaveConfig again = cfg;
  again.workers = 3;
  CHECK(measure_viscosity(again).amplitude == r.amplitude);

  ShearWaveConfig short_run = cfg;
  short_run.steps = 5;
  CHECK_THROWS_AS(measure_viscosity(short_run), NumericalError);

  ShearWaveConfig too_fast = cfg;
  too_fast.u0 = 0.2;
  CHECK_THROWS_AS(measure_viscosity(too_fast), std::invalid_argument);
}

TEST_CASE("halving the shear amplitude leaves the fitted viscosity unchanged") {
  // Mean and standard error over independent seeds.
  auto fit = [](double u0) {
    constexpr int kSeeds = 8;
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      ShearWaveConfig cfg;
      cfg.u0 = u0;
      cfg.seed = seed;
      const double nu = measure_viscosity(cfg).nu;
      sum += nu;
      sum2 += nu * nu;
    }
    const double mean = sum / kSeeds;
    const double var = (sum2 - kSeeds * mean * mean) / (kSeeds - 1);
    return std::pair{mean, std::sqrt(var / kSeeds)};
  };
  const auto [full, se_full] = fit(0.05);
  const auto [half, se_half] = fit(0.025);
  MESSAGE("nu(u0=0.05) = " << full << " +- " << se_full << ", nu(u0=0.025) = " << half << " +- "
                           << se_half);
  CHECK(std::abs(half - full) <= 3.0 * std::hypot(se_full, se_half));
}
