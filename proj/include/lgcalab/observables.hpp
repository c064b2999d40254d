// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lgcalab/lattice.hpp"

namespace lgcalab {

/// Mean occupation N_i per coarse cell. Cells are block x block sites
/// averaged over a window of consecutive states.
struct OccupationField {
  LatticeKind kind = LatticeKind::Hex6;
  int cells_x = 0;
  int cells_y = 0;
  int block = 1;
  int window = 1;
  std::vector<double> values;  // (cell_y * cells_x + cell_x) * z + i

  int directions() const { return direction_count(kind); }
  double at(int cx, int cy, int dir) const {
    return values[(static_cast<std::size_t>(cy) * static_cast<std::size_t>(cells_x) +
                   static_cast<std::size_t>(cx)) *
                      static_cast<std::size_t>(directions()) +
                  static_cast<std::size_t>(dir)];
  }
};

/// Streaming form of estimate_occupation: add states one at a time.
class OccupationAccumulator {
 public:
  OccupationAccumulator(const Topology& topo, int block);

  void add(const LatticeState& state);
  std::uint64_t count() const { return count_; }
  OccupationField field() const;

 private:
  Topology topo_;
  int block_;
  int cells_x_;
  int cells_y_;
  std::vector<std::uint64_t> sums_;
  std::uint64_t count_ = 0;
};

/// Averages n_i over block x block sites and the last `window` states of
/// `history`.
OccupationField estimate_occupation(std::span<const LatticeState> history,
                                    int block, int window);

struct MacroCell {
  double rho = 0.0;
  Vec2 u;
  double pxx = 0.0;
  double pxy = 0.0;
  double pyy = 0.0;
};

struct MacroField {
  int cells_x = 0;
  int cells_y = 0;
  std::vector<MacroCell> cells;  // row-major

  const MacroCell& at(int cx, int cy) const {
    return cells[static_cast<std::size_t>(cy) * static_cast<std::size_t>(cells_x) +
                 static_cast<std::size_t>(cx)];
  }
};

/// rho = sum N_i, rho u = sum v_i N_i, Pi_ab = sum v_ia v_ib N_i, with
/// v_i = (delta_r / delta_t) c_i. u is zero wherever rho is zero.
MacroCell macro_cell(LatticeKind kind, std::span<const double> occupation,
                     const UnitsConfig& units = {});
MacroField macro_fields(const OccupationField& occ, const UnitsConfig& units = {});

/// Lattice constants for FHP (z = 6, d = 2).
///
/// C4 does not follow from the pressure expression alone. It is fixed at
/// z / (d (d + 2)) = 3/4, which is the value that makes the lattice
/// viscosity -C4 b dt v^2 / 2 reduce to -dt v^2 / (2 (d + 2)).
struct FhpConstants {
  int z = 6;
  int d = 2;
  double a = 1.0 / 6.0;   // 1 / z
  double b = 1.0 / 3.0;   // d / z
  double c2 = 3.0;        // z / d
  double c4 = 0.75;       // z / (d (d + 2))
  UnitsConfig units;

  FhpConstants() = default;
  explicit FhpConstants(const UnitsConfig& u) : units(u) {}
  double speed() const { return units.speed(); }
};

/// G(rho) = (2/3) (3 - rho) / (6 - rho).
double fhp_g(double rho);

/// Lambda(rho) = 2 s (1 - s)^3 with s = rho / 6.
double fhp_lambda(double rho);

/// Second-order expansion of the Fermi-Dirac equilibrium:
/// N_i = a rho + (b rho / v^2) v_i.u + (rho G / v^4) Q_iab u_a u_b,
/// Q_iab = v_ia v_ib - (v^2 / d) delta_ab. Valid for |u| small against v;
/// callers should stay below about 0.3 v. Throws for rho outside (0, 6).
std::array<double, 6> equilibrium_occupation(double rho, Vec2 u,
                                             const FhpConstants& consts = {});

/// p = a C2 v^2 rho - (C2 / d - C4) rho G(rho) u^2.
double pressure(double rho, double u_squared, const FhpConstants& consts = {});

struct Viscosity {
  double collision = 0.0;  // dt v^2 b C4 / Lambda
  double lattice = 0.0;    // -dt v^2 / (2 (d + 2))
  double total = 0.0;
};

Viscosity predicted_viscosity(double rho, const UnitsConfig& units = {});

struct ShearWaveConfig {
  int width = 128;
  int height = 128;  // the wave spans the full (periodic) height
  double rho = 3.0;
  double u0 = 0.05;  // in units of v
  std::uint64_t steps = 2000;
  std::uint64_t seed = 1;
  int workers = 1;
  // The log-linear fit stops once the amplitude first falls below this
  // fraction of its initial value; past that the thermal noise dominates.
  double fit_floor = 0.3;
  UnitsConfig units;
};

struct ShearWaveResult {
  double nu = 0.0;          // measured kinematic viscosity
  double decay_rate = 0.0;  // fitted -d ln A / dt
  double wavenumber = 0.0;  // 2 pi / L, L = physical lattice height
  std::uint64_t fit_steps = 0;
  std::vector<double> amplitude;  // sine-mode amplitude of u_x per step
  std::int64_t initial_mass = 0;
  bool mass_conserved = true;
};

/// Shear-wave decay probe on an FHP lattice: initialize at equilibrium with
/// u_x(y) = u0 sin(k y), run, fit ln A(t) against t and return rate / k^2.
/// Throws NumericalError when the fitted signal does not decay.
ShearWaveResult measure_viscosity(const ShearWaveConfig& config);

}  // namespace lgcalab
