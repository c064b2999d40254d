// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lgcalab/collision.hpp"
#include "lgcalab/dynamics.hpp"
#include "lgcalab/errors.hpp"

namespace lgcalab {

namespace {

void require_density(double rho, const char* who) {
  require(rho > 0.0 && rho < 6.0,
          std::string(who) + ": density must lie in the open interval (0, 6) (got " +
              std::to_string(rho) + ")");
}

}  // namespace

OccupationAccumulator::OccupationAccumulator(const Topology& topo, int block)
    : topo_(topo), block_(block) {
  require(block >= 1, "estimate_occupation: block must be >= 1");
  require(topo.width % block == 0 && topo.height % block == 0,
          "estimate_occupation: block must divide the lattice dimensions");
  cells_x_ = topo.width / block;
  cells_y_ = topo.height / block;
  sums_.assign(static_cast<std::size_t>(cells_x_) * static_cast<std::size_t>(cells_y_) *
                   static_cast<std::size_t>(topo.directions()),
               0);
}

void OccupationAccumulator::add(const LatticeState& state) {
  require(state.topology() == topo_, "estimate_occupation: topology changed in history");
  const int z = topo_.directions();
  for (int y = 0; y < topo_.height; ++y) {
    const int cy = y / block_;
    for (int x = 0; x < topo_.width; ++x) {
      const std::uint8_t s = state.at(x, y);
      const std::size_t base =
          (static_cast<std::size_t>(cy) * static_cast<std::size_t>(cells_x_) +
           static_cast<std::size_t>(x / block_)) *
          static_cast<std::size_t>(z);
      for (int i = 0; i < z; ++i) sums_[base + static_cast<std::size_t>(i)] += (s >> i) & 1u;
    }
  }
  ++count_;
}

OccupationField OccupationAccumulator::field() const {
  require(count_ > 0, "estimate_occupation: empty history");
  OccupationField f;
  f.kind = topo_.kind;
  f.cells_x = cells_x_;
  f.cells_y = cells_y_;
  f.block = block_;
  f.window = static_cast<int>(count_);
  const double denom = static_cast<double>(count_) * block_ * block_;
  f.values.reserve(sums_.size());
  for (auto s : sums_) f.values.push_back(static_cast<double>(s) / denom);
  return f;
}

OccupationField estimate_occupation(std::span<const LatticeState> history,
                                    int block, int window) {
  require(!history.empty(), "estimate_occupation: empty history");
  require(window >= 1 && static_cast<std::size_t>(window) <= history.size(),
          "estimate_occupation: window must lie in [1, history length]");
  OccupationAccumulator acc(history.front().topology(), block);
  for (const auto& s : history.last(static_cast<std::size_t>(window))) acc.add(s);
  return acc.field();
}

MacroCell macro_cell(LatticeKind kind, std::span<const double> occupation,
                     const UnitsConfig& units) {
  const int z = direction_count(kind);
  require(static_cast<int>(occupation.size()) == z, "macro_fields: wrong occupation length");
  const double v = units.speed();
  MacroCell m;
  double jx = 0.0, jy = 0.0;
  for (int i = 0; i < z; ++i) {
    const double n = occupation[static_cast<std::size_t>(i)];
    const Vec2 c = unit_vector(kind, i);
    m.rho += n;
    jx += v * c.x * n;
    jy += v * c.y * n;
    m.pxx += v * v * c.x * c.x * n;
    m.pxy += v * v * c.x * c.y * n;
    m.pyy += v * v * c.y * c.y * n;
  }
  if (m.rho > 0.0) m.u = {jx / m.rho, jy / m.rho};
  return m;
}

MacroField macro_fields(const OccupationField& occ, const UnitsConfig& units) {
  MacroField f;
  f.cells_x = occ.cells_x;
  f.cells_y = occ.cells_y;
  const auto z = static_cast<std::size_t>(occ.directions());
  f.cells.reserve(occ.values.size() / z);
  for (std::size_t c = 0; c * z < occ.values.size(); ++c) {
    f.cells.push_back(macro_cell(occ.kind, std::span(occ.values).subspan(c * z, z), units));
  }
  return f;
}

double fhp_g(double rho) { return (2.0 / 3.0) * (3.0 - rho) / (6.0 - rho); }

double fhp_lambda(double rho) {
  const double s = rho / 6.0;
  return 2.0 * s * (1.0 - s) * (1.0 - s) * (1.0 - s);
}

std::array<double, 6> equilibrium_occupation(double rho, Vec2 u,
                                             const FhpConstants& consts) {
  require_density(rho, "equilibrium_occupation");
  const double v = consts.speed();
  const double v2 = v * v;
  const double g = fhp_g(rho);
  std::array<double, 6> n{};
  for (int i = 0; i < 6; ++i) {
    const Vec2 c = unit_vector(LatticeKind::Hex6, i);
    const double vx = v * c.x, vy = v * c.y;
    const double qxx = vx * vx - v2 / consts.d;
    const double qyy = vy * vy - v2 / consts.d;
    const double qxy = vx * vy;
    const double quad = qxx * u.x * u.x + 2.0 * qxy * u.x * u.y + qyy * u.y * u.y;
    n[static_cast<std::size_t>(i)] = consts.a * rho + (consts.b * rho / v2) * (vx * u.x + vy * u.y) +
                                     (rho * g / (v2 * v2)) * quad;
  }
  return n;
}

double pressure(double rho, double u_squared, const FhpConstants& consts) {
  require_density(rho, "pressure");
  const double v = consts.speed();
  return consts.a * consts.c2 * v * v * rho -
         (consts.c2 / consts.d - consts.c4) * rho * fhp_g(rho) * u_squared;
}

Viscosity predicted_viscosity(double rho, const UnitsConfig& units) {
  require_density(rho, "predicted_viscosity");
  const FhpConstants k(units);
  const double scale = units.delta_t * units.speed() * units.speed();
  Viscosity nu;
  nu.collision = scale * k.b * k.c4 / fhp_lambda(rho);
  nu.lattice = -scale * k.b * k.c4 / 2.0;
  nu.total = nu.collision + nu.lattice;
  return nu;
}

ShearWaveResult measure_viscosity(const ShearWaveConfig& cfg) {
  require_density(cfg.rho, "measure_viscosity");
  const double v = cfg.units.speed();
  require(cfg.u0 > 0.0 && cfg.u0 <= 0.1 * v,
          "measure_viscosity: amplitude u0 must lie in (0, 0.1 v]");
  require(cfg.steps >= 1, "measure_viscosity: need at least one step");
  require(cfg.fit_floor > 0.0 && cfg.fit_floor < 1.0,
          "measure_viscosity: fit floor must lie in (0, 1)");
  const Topology topo(LatticeKind::Hex6, cfg.width, cfg.height);

  const double wavelength = topo.height * topo.row_spacing() * cfg.units.delta_r;
  const double k = 2.0 * std::numbers::pi / wavelength;
  std::vector<double> sines(static_cast<std::size_t>(topo.height));
  for (int y = 0; y < topo.height; ++y) {
    sines[static_cast<std::size_t>(y)] =
        std::sin(k * y * topo.row_spacing() * cfg.units.delta_r);
  }

  const FhpConstants consts(cfg.units);
  std::vector<std::array<double, 6>> row_eq;
  row_eq.reserve(sines.size());
  for (double s : sines) {
    row_eq.push_back(equilibrium_occupation(cfg.rho, {cfg.u0 * s, 0.0}, consts));
  }
  LatticeState state = initialize_from_profile(
      topo,
      [&](int, int y, int dir) {
        return row_eq[static_cast<std::size_t>(y)][static_cast<std::size_t>(dir)];
      },
      cfg.seed);

  ShearWaveResult result;
  result.wavenumber = k;
  result.initial_mass = state.mass();
  result.amplitude.reserve(cfg.steps + 1);

  // A(t) = (2 / H) sum_y u_x(y) sin(k y), with u_x from row momentum / row mass.
  auto amplitude = [&](const LatticeState& s) {
    double acc = 0.0;
    for (int y = 0; y < topo.height; ++y) {
      std::int64_t mass = 0;
      std::int64_t jx_half = 0;
      for (int x = 0; x < topo.width; ++x) {
        const std::uint8_t m = s.at(x, y);
        mass += popcount6(m);
        jx_half += site_momentum(LatticeKind::Hex6, m).x;
      }
      if (mass > 0) {
        acc += (0.5 * static_cast<double>(jx_half) * v / static_cast<double>(mass)) *
               sines[static_cast<std::size_t>(y)];
      }
    }
    return 2.0 * acc / topo.height;
  };

  result.amplitude.push_back(amplitude(state));
  const CollisionTable table = build_collision_table(Model::FHP);
  const RandomPolicy rng(cfg.seed);
  state = run(std::move(state), table, rng, cfg.steps, cfg.workers,
              [&](const LatticeState& s) {
                result.amplitude.push_back(amplitude(s));
                if (s.mass() != result.initial_mass) result.mass_conserved = false;
              });

  const double a0 = result.amplitude.front();
  if (!(a0 > 0.0)) throw NumericalError("measure_viscosity: initial shear amplitude is not positive");
  std::size_t end = 0;
  while (end < result.amplitude.size() && result.amplitude[end] >= cfg.fit_floor * a0) ++end;
  if (end < 8) throw NumericalError("measure_viscosity: too few samples above the fit floor");

  // Least squares for ln A = c - rate * t.
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (std::size_t t = 0; t < end; ++t) {
    const double time = static_cast<double>(t) * cfg.units.delta_t;
    const double l = std::log(result.amplitude[t]);
    st += time;
    sl += l;
    stt += time * time;
    stl += time * l;
  }
  const double n = static_cast<double>(end);
  const double slope = (n * stl - st * sl) / (n * stt - st * st);
  if (!(slope < 0.0) || !std::isfinite(slope)) {
    throw NumericalError("measure_viscosity: shear wave amplitude did not decay");
  }
  result.decay_rate = -slope;
  result.fit_steps = end;
  result.nu = result.decay_rate / (k * k);
  return result;
}

}  // namespace lgcalab
