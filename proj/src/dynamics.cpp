// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/dynamics.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "lgcalab/errors.hpp"
#include "lgcalab/rng.hpp"

namespace lgcalab {

LatticeState step(const LatticeState& state, const CollisionTable& table,
                  const RandomPolicy& rng, int workers) {
  const Topology& topo = state.topology();
  require(lattice_of(table.model()) == topo.kind,
          "step: collision table model does not match the lattice topology");
  const auto in = state.cells();
  std::vector<std::uint8_t> collided(in.size());
  // entries(0) and entries(1) are contiguous: index q * 2^z + state.
  const std::uint8_t* lut = table.entries(0).data();
  const int shift = topo.directions();

  detail::parallel_rows(topo.height, workers, [&](int y0, int y1) {
    std::vector<std::uint8_t> q(static_cast<std::size_t>(topo.width));
    for (int y = y0; y < y1; ++y) {
      rng.fill_row(state.time(), y, q);
      const std::size_t base = topo.index(0, y);
      for (std::size_t x = 0; x < q.size(); ++x) {
        const std::uint8_t s = in[base + x];
        collided[base + x] = lut[(static_cast<unsigned>(q[x]) << shift) | s];
      }
    }
  });
  return propagate(LatticeState(topo, std::move(collided), state.time()), workers);
}

LatticeState run(LatticeState state, const CollisionTable& table,
                 const RandomPolicy& rng, std::uint64_t steps, int workers,
                 const std::function<void(const LatticeState&)>& observer) {
  for (std::uint64_t t = 0; t < steps; ++t) {
    state = step(state, table, rng, workers);
    if (observer) observer(state);
  }
  return state;
}

LatticeState initialize_bernoulli(const Topology& topo, double density,
                                  std::uint64_t seed) {
  const int z = topo.directions();
  require(density >= 0.0 && density <= z,
          "density must lie in [0, z] (got " + std::to_string(density) + ")");
  const double p = density / z;
  return initialize_from_profile(topo, [p](int, int, int) { return p; }, seed);
}

LatticeState initialize_balanced(const Topology& topo, double density,
                                 std::uint64_t seed) {
  const int z = topo.directions();
  require(density >= 0.0 && density <= z,
          "density must lie in [0, z] (got " + std::to_string(density) + ")");
  const std::size_t n = topo.sites();
  const auto per_dir = static_cast<std::size_t>(std::llround(static_cast<double>(n) * density / z));
  const CounterRng rng(seed);
  std::vector<std::uint8_t> cells(n, 0);
  std::vector<std::uint32_t> order(n);
  for (int dir = 0; dir < z; ++dir) {
    std::iota(order.begin(), order.end(), 0u);
    // Partial Fisher-Yates: the first per_dir entries are a uniform sample.
    for (std::size_t i = 0; i < per_dir; ++i) {
      const double u = rng.uniform(Stream::InitialShuffle, static_cast<std::uint32_t>(dir),
                                   static_cast<std::uint32_t>(i), 0);
      const std::size_t j = i + static_cast<std::size_t>(u * static_cast<double>(n - i));
      std::swap(order[i], order[j]);
      cells[order[i]] |= static_cast<std::uint8_t>(1u << dir);
    }
  }
  return LatticeState(topo, std::move(cells), 0);
}

LatticeState initialize_from_profile(const Topology& topo,
                                     const OccupationProfile& profile,
                                     std::uint64_t seed) {
  const CounterRng rng(seed);
  const int z = topo.directions();
  std::vector<std::uint8_t> cells(topo.sites(), 0);
  for (int y = 0; y < topo.height; ++y) {
    for (int x = 0; x < topo.width; ++x) {
      // One Philox block yields two uniforms; draw directions in pairs.
      unsigned mask = 0;
      for (int dir = 0; dir < z; dir += 2) {
        const auto r = rng.block(Stream::InitialOccupation, static_cast<std::uint32_t>(x),
                                 static_cast<std::uint32_t>(y),
                                 static_cast<std::uint32_t>(dir / 2));
        for (int k = 0; k < 2; ++k) {
          const double p = profile(x, y, dir + k);
          require(p >= 0.0 && p <= 1.0, "occupation probability outside [0, 1]");
          const double u = to_unit_double(r[static_cast<std::size_t>(2 * k)],
                                          r[static_cast<std::size_t>(2 * k + 1)]);
          if (u < p) mask |= 1u << (dir + k);
        }
      }
      cells[topo.index(x, y)] = static_cast<std::uint8_t>(mask);
    }
  }
  return LatticeState(topo, std::move(cells), 0);
}

}  // namespace lgcalab
