// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/lattice.hpp"

#include <numbers>
#include <string>

#include "lgcalab/errors.hpp"

namespace lgcalab {

namespace {

// Half-unit encoding of the hexagonal directions: (x/2, y*sqrt(3)/2).
constexpr std::array<IntMomentum, 6> kHexInt{{
    {2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}}};
constexpr std::array<IntMomentum, 4> kSquareInt{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

struct Offset {
  int dx;
  int dy;
};

// Displacement of direction `dir` from a site in a row of given parity.
Offset offset(LatticeKind kind, int dir, int row_parity) {
  if (kind == LatticeKind::Square4) {
    const auto& c = kSquareInt[static_cast<std::size_t>(dir)];
    return {static_cast<int>(c.x), static_cast<int>(c.y)};
  }
  switch (dir) {
    case 0: return {1, 0};
    case 1: return {row_parity, 1};
    case 2: return {row_parity - 1, 1};
    case 3: return {-1, 0};
    case 4: return {row_parity - 1, -1};
    default: return {row_parity, -1};
  }
}

int wrap(int v, int n) {
  v %= n;
  return v < 0 ? v + n : v;
}

// out(r) bit i = in(r + sign * c_i) bit i.
LatticeState stream(const LatticeState& in, int sign, std::uint64_t new_time,
                    int workers) {
  const Topology& topo = in.topology();
  const int z = topo.directions();
  const int w = topo.width;
  const int h = topo.height;
  const auto src = in.cells();
  std::vector<std::uint8_t> out(src.size(), 0);

  detail::parallel_rows(h, workers, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      std::uint8_t* dst = out.data() + topo.index(0, y);
      for (int dir = 0; dir < z; ++dir) {
        // Pull from the site one step against the streaming direction.
        const int pull_dir = sign > 0 ? opposite(topo.kind, dir) : dir;
        const Offset off = offset(topo.kind, pull_dir, y & 1);
        const int sy = wrap(y + off.dy, h);
        const std::uint8_t* row = src.data() + topo.index(0, sy);
        const std::uint8_t bit = static_cast<std::uint8_t>(1u << dir);
        // |dx| <= 1: one wrapped column at an edge, a shifted run elsewhere.
        const int lo = off.dx < 0 ? 1 : 0;
        const int hi = off.dx > 0 ? w - 1 : w;
        std::uint8_t* __restrict d = dst;
        const std::uint8_t* __restrict r = row + off.dx;
        for (int x = lo; x < hi; ++x) d[x] |= static_cast<std::uint8_t>(r[x] & bit);
        if (off.dx < 0) d[0] |= static_cast<std::uint8_t>(row[w - 1] & bit);
        if (off.dx > 0) d[w - 1] |= static_cast<std::uint8_t>(row[0] & bit);
      }
    }
  });
  return LatticeState(topo, std::move(out), new_time);
}

}  // namespace

Vec2 unit_vector(LatticeKind kind, int dir) {
  if (kind == LatticeKind::Hex6) {
    const auto& c = kHexInt[static_cast<std::size_t>(dir)];
    return {static_cast<double>(c.x) / 2.0,
            static_cast<double>(c.y) * std::numbers::sqrt3 / 2.0};
  }
  const auto& c = kSquareInt[static_cast<std::size_t>(dir)];
  return {static_cast<double>(c.x), static_cast<double>(c.y)};
}

IntMomentum int_direction(LatticeKind kind, int dir) {
  return kind == LatticeKind::Hex6 ? kHexInt[static_cast<std::size_t>(dir)]
                                   : kSquareInt[static_cast<std::size_t>(dir)];
}

namespace {

template <std::size_t Z, std::size_t N>
constexpr std::array<IntMomentum, (1u << Z)> momentum_table(
    const std::array<IntMomentum, N>& dirs) {
  std::array<IntMomentum, (1u << Z)> table{};
  for (unsigned mask = 0; mask < (1u << Z); ++mask) {
    for (unsigned i = 0; i < Z; ++i) {
      if (mask & (1u << i)) table[mask] += dirs[i];
    }
  }
  return table;
}

constexpr auto kHexMomentum = momentum_table<6>(kHexInt);
constexpr auto kSquareMomentum = momentum_table<4>(kSquareInt);

}  // namespace

IntMomentum site_momentum(LatticeKind kind, std::uint8_t mask) {
  return kind == LatticeKind::Hex6 ? kHexMomentum[mask & 63u]
                                   : kSquareMomentum[mask & 15u];
}

Topology::Topology(LatticeKind k, int w, int h) : kind(k), width(w), height(h) {
  require(w > 0 && h > 0, "topology: width and height must be positive");
  if (k == LatticeKind::Hex6) {
    require(h % 2 == 0, "topology: hex6 lattices need an even height (got " +
                            std::to_string(h) + ")");
  }
}

double Topology::row_spacing() const {
  return kind == LatticeKind::Hex6 ? std::numbers::sqrt3 / 2.0 : 1.0;
}

Site neighbor(const Topology& topo, Site pos, int dir) {
  const Offset off = offset(topo.kind, dir, pos.y & 1);
  return {wrap(pos.x + off.dx, topo.width), wrap(pos.y + off.dy, topo.height)};
}

UnitsConfig::UnitsConfig(double dt, double dr) : delta_t(dt), delta_r(dr) {
  require(dt > 0.0 && dr > 0.0, "units: delta_t and delta_r must be positive");
}

LatticeState::LatticeState(Topology topo, std::uint64_t time)
    : topo_(topo), cells_(topo.sites(), 0), time_(time) {}

LatticeState::LatticeState(Topology topo, std::vector<std::uint8_t> cells,
                           std::uint64_t time)
    : topo_(topo), cells_(std::move(cells)), time_(time) {
  require(cells_.size() == topo_.sites(), "lattice state: cell count mismatch");
  const auto limit = static_cast<unsigned>(1u << topo_.directions());
  for (auto c : cells_) {
    require(c < limit, "lattice state: site mask uses bits beyond z");
  }
}

void LatticeState::set(Site s, std::uint8_t mask) {
  require(mask < (1u << topo_.directions()), "lattice state: mask out of range");
  cells_[topo_.index(s.x, s.y)] = mask;
}

void LatticeState::add_particle(Site s, int dir) {
  require(dir >= 0 && dir < topo_.directions(), "lattice state: bad direction");
  cells_[topo_.index(s.x, s.y)] |= static_cast<std::uint8_t>(1u << dir);
}

std::int64_t LatticeState::mass() const {
  std::int64_t m = 0;
  for (auto c : cells_) m += popcount6(c);
  return m;
}

std::array<std::int64_t, 6> LatticeState::direction_counts() const {
  std::array<std::int64_t, 6> counts{};
  for (auto c : cells_) {
    for (int i = 0; i < 6; ++i) counts[static_cast<std::size_t>(i)] += (c >> i) & 1u;
  }
  return counts;
}

IntMomentum LatticeState::momentum() const {
  const auto counts = direction_counts();
  IntMomentum m;
  for (int i = 0; i < topo_.directions(); ++i) {
    const auto c = int_direction(topo_.kind, i);
    m.x += c.x * counts[static_cast<std::size_t>(i)];
    m.y += c.y * counts[static_cast<std::size_t>(i)];
  }
  return m;
}

LatticeState propagate(const LatticeState& state, int workers) {
  return stream(state, +1, state.time() + 1, workers);
}

LatticeState unpropagate(const LatticeState& state, int workers) {
  require(state.time() > 0, "unpropagate: state is already at time 0");
  return stream(state, -1, state.time() - 1, workers);
}

}  // namespace lgcalab
