// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/collision.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lgcalab/rng.hpp"

namespace lgcalab {

namespace {

inline int bit(std::uint8_t s, int i) { return (s >> (((i % 6) + 6) % 6)) & 1; }

}  // namespace

int fhp_two_body_flag(std::uint8_t s, int i) {
  return bit(s, i) * bit(s, i + 3) * (1 - bit(s, i + 1)) * (1 - bit(s, i + 2)) *
         (1 - bit(s, i + 4)) * (1 - bit(s, i + 5));
}

int fhp_three_body_flag(std::uint8_t s, int i) {
  return bit(s, i) * bit(s, i + 2) * bit(s, i + 4) * (1 - bit(s, i + 1)) *
         (1 - bit(s, i + 3)) * (1 - bit(s, i + 5));
}

std::array<int, 6> fhp_collision_term(std::uint8_t s, int q) {
  std::array<int, 6> omega{};
  for (int i = 0; i < 6; ++i) {
    omega[static_cast<std::size_t>(i)] =
        -fhp_two_body_flag(s, i) + q * fhp_two_body_flag(s, i + 5) +
        (1 - q) * fhp_two_body_flag(s, i + 1) - fhp_three_body_flag(s, i) +
        fhp_three_body_flag(s, i + 3);
  }
  return omega;
}

std::uint8_t fhp_collide_site(std::uint8_t s, int q) {
  const auto omega = fhp_collision_term(s, q);
  unsigned out = 0;
  for (int i = 0; i < 6; ++i) {
    const int n = bit(s, i) + omega[static_cast<std::size_t>(i)];
    if (n != 0 && n != 1) {
      throw std::logic_error("fhp_collide_site: occupation left {0,1}");
    }
    out |= static_cast<unsigned>(n) << i;
  }
  return static_cast<std::uint8_t>(out);
}

std::uint8_t hpp_collide_site(std::uint8_t s) {
  constexpr std::uint8_t kEastWest = 0b0101;
  constexpr std::uint8_t kNorthSouth = 0b1010;
  if (s == kEastWest) return kNorthSouth;
  if (s == kNorthSouth) return kEastWest;
  return s;
}

CollisionTable CollisionTable::from_rule(Model model, const SiteRule& rule) {
  const LatticeKind kind = lattice_of(model);
  const int n = 1 << direction_count(kind);
  std::vector<std::uint8_t> entries(static_cast<std::size_t>(2 * n));
  for (int q = 0; q < 2; ++q) {
    for (int s = 0; s < n; ++s) {
      const auto in = static_cast<std::uint8_t>(s);
      const std::uint8_t out = rule(in, q);
      if (out >= n || popcount6(out) != popcount6(in) ||
          !(site_momentum(kind, out) == site_momentum(kind, in))) {
        throw std::logic_error("collision table: entry (state " + std::to_string(s) +
                               ", q " + std::to_string(q) +
                               ") violates mass or momentum conservation");
      }
      entries[static_cast<std::size_t>(q * n + s)] = out;
    }
  }
  return CollisionTable(model, std::move(entries));
}

CollisionTable build_collision_table(Model model) {
  if (model == Model::FHP) {
    return CollisionTable::from_rule(model, [](std::uint8_t s, int q) {
      return fhp_collide_site(s, q);
    });
  }
  return CollisionTable::from_rule(model, [](std::uint8_t s, int) {
    return hpp_collide_site(s);
  });
}

int RandomPolicy::q(std::uint64_t time, int x, int y) const {
  const CounterRng rng(seed_);
  const auto block = rng.block(Stream::CollisionChirality, static_cast<std::uint32_t>(time),
                               static_cast<std::uint32_t>(y),
                               static_cast<std::uint32_t>(x) >> 7);
  const auto word = block[static_cast<std::size_t>((x >> 5) & 3)];
  return static_cast<int>((word >> (x & 31)) & 1u);
}

void RandomPolicy::fill_row(std::uint64_t time, int y,
                            std::span<std::uint8_t> out) const {
  const CounterRng rng(seed_);
  const int width = static_cast<int>(out.size());
  for (int base = 0; base < width; base += 128) {
    const auto block = rng.block(Stream::CollisionChirality, static_cast<std::uint32_t>(time),
                                 static_cast<std::uint32_t>(y),
                                 static_cast<std::uint32_t>(base) >> 7);
    const int end = std::min(width, base + 128);
    for (int x = base; x < end; ++x) {
      const auto word = block[static_cast<std::size_t>((x >> 5) & 3)];
      out[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>((word >> (x & 31)) & 1u);
    }
  }
}

}  // namespace lgcalab
