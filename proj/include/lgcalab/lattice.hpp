// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace lgcalab {

enum class LatticeKind { Square4, Hex6 };

/// Number of velocity directions z for a lattice kind.
constexpr int direction_count(LatticeKind kind) {
  return kind == LatticeKind::Hex6 ? 6 : 4;
}

/// Opposite direction index (0-based).
constexpr int opposite(LatticeKind kind, int dir) {
  const int z = direction_count(kind);
  return (dir + z / 2) % z;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Unit vector c_i for 0-based direction index `dir`.
///
/// Hex6: c_k = (cos(k*pi/3), sin(k*pi/3)), so direction 0 points along +x.
/// Square4: 0=E, 1=N, 2=W, 3=S.
Vec2 unit_vector(LatticeKind kind, int dir);

/// Exact lattice momentum. Square4 components are plain integers. Hex6
/// components count halves: a vector equals (x/2, y*sqrt(3)/2).
struct IntMomentum {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const IntMomentum&, const IntMomentum&) = default;
  constexpr IntMomentum& operator+=(const IntMomentum& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

IntMomentum int_direction(LatticeKind kind, int dir);

/// Summed exact momentum of the particles present in a site bitmask.
IntMomentum site_momentum(LatticeKind kind, std::uint8_t mask);

inline int popcount6(std::uint8_t mask) { return __builtin_popcount(mask); }

enum class Boundary { Periodic };

/// Periodic rectangular grid of sites.
///
/// Hex6 uses offset ("brick-wall") coordinates: odd rows are shifted half
/// a lattice spacing along +x, and consecutive rows are sqrt(3)/2 apart.
/// Height must be even so the periodic wrap keeps the row parity.
struct Topology {
  LatticeKind kind = LatticeKind::Hex6;
  int width = 0;
  int height = 0;
  Boundary boundary = Boundary::Periodic;

  Topology() = default;
  Topology(LatticeKind k, int w, int h);

  int directions() const { return direction_count(kind); }
  std::size_t sites() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  /// Vertical spacing between rows in units of the lattice spacing.
  double row_spacing() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

struct Site {
  int x = 0;
  int y = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

/// Site reached by moving one lattice spacing along direction `dir`.
Site neighbor(const Topology& topo, Site pos, int dir);

struct UnitsConfig {
  double delta_t = 1.0;
  double delta_r = 1.0;

  UnitsConfig() = default;
  UnitsConfig(double dt, double dr);
  double speed() const { return delta_r / delta_t; }
};

/// Occupation numbers of every (site, direction) pair at one time step.
/// Bit i of a site mask is n_i for 0-based direction i.
class LatticeState {
 public:
  LatticeState() = default;
  explicit LatticeState(Topology topo, std::uint64_t time = 0);
  LatticeState(Topology topo, std::vector<std::uint8_t> cells,
               std::uint64_t time);

  const Topology& topology() const { return topo_; }
  std::uint64_t time() const { return time_; }
  std::span<const std::uint8_t> cells() const { return cells_; }

  std::uint8_t at(int x, int y) const { return cells_[topo_.index(x, y)]; }
  std::uint8_t at(Site s) const { return at(s.x, s.y); }

  /// Builder-side mutation; operations never modify their inputs.
  void set(Site s, std::uint8_t mask);
  void add_particle(Site s, int dir);

  std::int64_t mass() const;
  std::array<std::int64_t, 6> direction_counts() const;
  IntMomentum momentum() const;

  friend bool operator==(const LatticeState&, const LatticeState&) = default;

 private:
  Topology topo_;
  std::vector<std::uint8_t> cells_;
  std::uint64_t time_ = 0;
};

/// Free streaming: n_i(r + c_i, t + 1) = n_i(r, t). Rows may be split
/// across `workers` threads; the result does not depend on the split.
LatticeState propagate(const LatticeState& state, int workers = 1);

/// Inverse of propagate (streams every particle against its velocity and
/// decrements the time).
LatticeState unpropagate(const LatticeState& state, int workers = 1);

namespace detail {
// Runs body(row_begin, row_end) over [0, rows) on up to `workers` threads.
template <typename Body>
void parallel_rows(int rows, int workers, Body&& body);
}  // namespace detail

}  // namespace lgcalab

#include "lgcalab/detail/parallel.hpp"
