// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lgcalab/lattice.hpp"

namespace lgcalab {

enum class Model { HPP, FHP };

constexpr LatticeKind lattice_of(Model m) {
  return m == Model::FHP ? LatticeKind::Hex6 : LatticeKind::Square4;
}

// FHP site collision, written directly from the occupation numbers.
// Direction indices are 0-based and taken mod 6.

/// D_i: head-on pair along i and i+3 with the other four slots empty.
int fhp_two_body_flag(std::uint8_t state, int i);

/// T_i: symmetric triple i, i+2, i+4 with the other three slots empty.
int fhp_three_body_flag(std::uint8_t state, int i);

/// Omega_i = -D_i + q D_{i-1} + (1-q) D_{i+1} - T_i + T_{i+3}.
///
/// With q = 1 a head-on pair along (i, i+3) leaves along (i+1, i+4), i.e.
/// the pair rotates counterclockwise by 60 degrees; q = 0 rotates it
/// clockwise.
std::array<int, 6> fhp_collision_term(std::uint8_t state, int q);

std::uint8_t fhp_collide_site(std::uint8_t state, int q);

/// HPP: {E,W} <-> {N,S}; every other configuration passes through.
std::uint8_t hpp_collide_site(std::uint8_t state);

/// Precomputed site-state map indexed by (q, state). Every entry is checked
/// for mass and momentum conservation when the table is built.
class CollisionTable {
 public:
  using SiteRule = std::function<std::uint8_t(std::uint8_t state, int q)>;

  /// Tabulates `rule`; throws std::logic_error if any entry changes the
  /// particle count or the momentum.
  static CollisionTable from_rule(Model model, const SiteRule& rule);

  Model model() const { return model_; }
  int states() const { return 1 << direction_count(lattice_of(model_)); }
  std::size_t size() const { return entries_.size(); }

  std::uint8_t lookup(std::uint8_t state, int q) const {
    return entries_[static_cast<std::size_t>(q) * static_cast<std::size_t>(states()) + state];
  }
  std::span<const std::uint8_t> entries(int q) const {
    return std::span<const std::uint8_t>(entries_).subspan(
        static_cast<std::size_t>(q * states()), static_cast<std::size_t>(states()));
  }

 private:
  CollisionTable(Model model, std::vector<std::uint8_t> entries)
      : model_(model), entries_(std::move(entries)) {}

  Model model_;
  std::vector<std::uint8_t> entries_;
};

CollisionTable build_collision_table(Model model);

/// Per-(site, step) chirality bits q ~ Bernoulli(1/2), generated from
/// (seed, time, x, y) by a counter-based generator.
class RandomPolicy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  int q(std::uint64_t time, int x, int y) const;

  /// q for every site of row y, written as 0/1 bytes into `out`.
  void fill_row(std::uint64_t time, int y, std::span<std::uint8_t> out) const;

 private:
  std::uint64_t seed_;
};

}  // namespace lgcalab
