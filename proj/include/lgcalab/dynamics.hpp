// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

#include "lgcalab/collision.hpp"
#include "lgcalab/lattice.hpp"

namespace lgcalab {

/// One time step: collide every site through the table with its
/// (seed, time, x, y) chirality bit, then propagate.
LatticeState step(const LatticeState& state, const CollisionTable& table,
                  const RandomPolicy& rng, int workers = 1);

/// Advances `steps` time steps. `observer`, if set, sees every state after
/// each step (not the initial one).
LatticeState run(LatticeState state, const CollisionTable& table,
                 const RandomPolicy& rng, std::uint64_t steps, int workers = 1,
                 const std::function<void(const LatticeState&)>& observer = {});

/// Each (site, direction) is occupied independently with probability
/// density / z.
LatticeState initialize_bernoulli(const Topology& topo, double density,
                                  std::uint64_t seed);

/// Every direction receives exactly round(sites * density / z) particles
/// placed uniformly at random. When that count is exact, mass equals
/// density * sites and the total momentum is zero.
LatticeState initialize_balanced(const Topology& topo, double density,
                                 std::uint64_t seed);

/// Occupation probability for direction `dir` at site (x, y).
using OccupationProfile = std::function<double(int x, int y, int dir)>;

/// Samples n_i(x, y) ~ Bernoulli(profile(x, y, i)) independently.
LatticeState initialize_from_profile(const Topology& topo,
                                     const OccupationProfile& profile,
                                     std::uint64_t seed);

}  // namespace lgcalab
