// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lgcalab::eca {

/// Elementary (r = 1, binary) cellular automaton rule. Bit k of the rule
/// number is the output for the neighborhood (left, center, right) whose
/// binary value 4*left + 2*center + right equals k.
class Rule {
 public:
  explicit Rule(int number);

  /// Rule whose output table is `table[k]` for neighborhood value k.
  static Rule from_table(std::span<const std::uint8_t, 8> table);

  int number() const { return number_; }
  std::uint8_t output(int left, int center, int right) const {
    return static_cast<std::uint8_t>((number_ >> (4 * left + 2 * center + right)) & 1);
  }
  std::uint8_t output(int neighborhood) const {
    return static_cast<std::uint8_t>((number_ >> neighborhood) & 1);
  }

  /// Rule obtained by reflecting every neighborhood left to right.
  Rule mirrored() const;

 private:
  int number_;
};

enum class Boundary { FixedZero, Periodic };

using Row = std::vector<std::uint8_t>;  // one 0/1 byte per cell

/// One synchronous update. Width must be at least 3.
Row apply_rule(const Rule& rule, const Row& row, Boundary boundary);

/// Rows 0..steps, row 0 being `initial`.
struct SpacetimeDiagram {
  Boundary boundary = Boundary::FixedZero;
  std::vector<Row> rows;

  int width() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

SpacetimeDiagram evolve(const Rule& rule, const Row& initial, int steps,
                        Boundary boundary);

Row single_seed_row(int width);
Row random_row(int width, std::uint64_t seed);

/// Pattern-response matrix F: entry (i, j) is rule j applied once, without
/// boundary, to the l-bit expansion of i (most significant bit leftmost),
/// read back as an (l-2)-bit number with the leftmost output bit most
/// significant.
class PatternTable {
 public:
  static constexpr int kRules = 256;

  explicit PatternTable(int pattern_length);

  int pattern_length() const { return length_; }
  std::size_t patterns() const { return std::size_t{1} << length_; }
  std::uint32_t at(std::size_t pattern, int rule) const {
    return entries_[pattern * kRules + static_cast<std::size_t>(rule)];
  }

 private:
  int length_;
  std::vector<std::uint32_t> entries_;  // row-major, patterns x 256
};

/// Lengths above this are rejected (2^l x 256 entries).
inline constexpr int kMaxPatternLength = 16;

PatternTable build_pattern_table(int pattern_length);

/// Interior-only application of `rule` to an l-bit pattern.
std::uint32_t apply_to_pattern(const Rule& rule, std::uint32_t pattern, int length);

}  // namespace lgcalab::eca
