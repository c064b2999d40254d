// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/eca.hpp"

#include <string>

#include "lgcalab/errors.hpp"
#include "lgcalab/rng.hpp"

namespace lgcalab::eca {

Rule::Rule(int number) : number_(number) {
  require(number >= 0 && number <= 255,
          "eca rule number must lie in [0, 255] (got " + std::to_string(number) + ")");
}

Rule Rule::from_table(std::span<const std::uint8_t, 8> table) {
  int number = 0;
  for (int k = 0; k < 8; ++k) {
    require(table[static_cast<std::size_t>(k)] <= 1, "eca rule table entries must be 0 or 1");
    number |= table[static_cast<std::size_t>(k)] << k;
  }
  return Rule(number);
}

Rule Rule::mirrored() const {
  int number = 0;
  for (int k = 0; k < 8; ++k) {
    const int reflected = ((k & 1) << 2) | (k & 2) | ((k >> 2) & 1);
    number |= output(k) << reflected;
  }
  return Rule(number);
}

Row apply_rule(const Rule& rule, const Row& row, Boundary boundary) {
  const int w = static_cast<int>(row.size());
  require(w >= 3, "apply_rule: row width must be at least 3");
  auto cell = [&](int i) -> int {
    if (i < 0 || i >= w) {
      if (boundary == Boundary::FixedZero) return 0;
      i = (i + w) % w;
    }
    return row[static_cast<std::size_t>(i)];
  };
  Row next(row.size());
  for (int i = 0; i < w; ++i) {
    next[static_cast<std::size_t>(i)] = rule.output(cell(i - 1), cell(i), cell(i + 1));
  }
  return next;
}

SpacetimeDiagram evolve(const Rule& rule, const Row& initial, int steps,
                        Boundary boundary) {
  require(steps >= 0, "evolve: step count must be non-negative");
  require(initial.size() >= 3, "evolve: row width must be at least 3");
  SpacetimeDiagram d;
  d.boundary = boundary;
  d.rows.reserve(static_cast<std::size_t>(steps) + 1);
  d.rows.push_back(initial);
  for (int t = 0; t < steps; ++t) d.rows.push_back(apply_rule(rule, d.rows.back(), boundary));
  return d;
}

Row single_seed_row(int width) {
  require(width >= 3, "eca row width must be at least 3");
  Row r(static_cast<std::size_t>(width), 0);
  r[static_cast<std::size_t>(width / 2)] = 1;
  return r;
}

Row random_row(int width, std::uint64_t seed) {
  require(width >= 3, "eca row width must be at least 3");
  const CounterRng rng(seed);
  Row r(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) {
    r[static_cast<std::size_t>(i)] =
        rng.block(Stream::EcaInitial, static_cast<std::uint32_t>(i), 0, 0)[0] & 1u;
  }
  return r;
}

std::uint32_t apply_to_pattern(const Rule& rule, std::uint32_t pattern, int length) {
  std::uint32_t out = 0;
  // Window starting at bit position `length - 1 - c` from the left.
  for (int c = 1; c + 1 < length; ++c) {
    const int shift = length - 2 - c;  // position of the right neighbor
    const int neighborhood = static_cast<int>((pattern >> shift) & 7u);
    out = (out << 1) | rule.output(neighborhood);
  }
  return out;
}

PatternTable::PatternTable(int pattern_length) : length_(pattern_length) {
  require(pattern_length >= 3 && pattern_length <= kMaxPatternLength,
          "pattern length l must lie in [3, " + std::to_string(kMaxPatternLength) +
              "] (got " + std::to_string(pattern_length) + ")");
  entries_.resize(patterns() * kRules);
  for (int j = 0; j < kRules; ++j) {
    const Rule rule(j);
    for (std::size_t i = 0; i < patterns(); ++i) {
      entries_[i * kRules + static_cast<std::size_t>(j)] =
          apply_to_pattern(rule, static_cast<std::uint32_t>(i), length_);
    }
  }
}

PatternTable build_pattern_table(int pattern_length) { return PatternTable(pattern_length); }

}  // namespace lgcalab::eca
