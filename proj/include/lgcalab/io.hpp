// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lgcalab/eca.hpp"
#include "lgcalab/lattice.hpp"
#include "lgcalab/matrix.hpp"
#include "lgcalab/observables.hpp"
#include "lgcalab/pca.hpp"
#include "lgcalab/wsccs.hpp"

// On-disk formats. CSV files are comma-separated with a header row and LF
// line endings; reals are printed with 17 significant digits so identical
// runs produce identical bytes. Images are binary PBM (P4) and PGM (P5).
namespace lgcalab::io {

std::string format_real(double v);

void write_file(const std::filesystem::path& path, const std::string& contents);

/// x,y,rho,ux,uy,Pxx,Pxy,Pyy per coarse cell.
std::string macro_csv(const MacroField& field);

/// Grey value popcount * 255 / z per site; row 0 is written first.
std::string occupancy_pgm(const LatticeState& state);

/// x,y,mask per site.
std::string bitmask_csv(const LatticeState& state);

/// One image row per time step, black (1) for live cells.
std::string diagram_pbm(const eca::SpacetimeDiagram& diagram);

/// t,c0,c1,... per time step.
std::string diagram_csv(const eca::SpacetimeDiagram& diagram);

/// pattern,0,1,...,255 with the pattern as an l-character bit string.
std::string pattern_table_csv(const eca::PatternTable& table);

/// rank,eigenvalue (rank starts at 1).
std::string spectrum_csv(const pca::Spectrum& spectrum);

/// rank,eigenvalue,v0,...,v{n-1}: one eigenpair per row.
std::string eigenpairs_csv(const pca::Spectrum& spectrum);

/// rule,pc1..pcK from the first K eigenvector columns.
std::string loadings_csv(const Matrix& vectors, int components);

/// from,0,1,...,n followed by one row per state.
std::string chain_csv(const wsccs::TransitionMatrix& chain);

/// trial,t,A_t.
std::string trajectories_csv(const wsccs::Trajectories& paths);

/// Parses a numeric CSV matrix. A first line that does not parse as numbers
/// is treated as a header and skipped.
Matrix parse_matrix_csv(const std::string& text);

std::string read_file(const std::filesystem::path& path);

/// Everything needed to rerun a command: the subcommand, every parameter
/// as given, the seed and the code version. Timestamps are informational.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  std::string to_json() const;
};

std::string utc_timestamp();

}  // namespace lgcalab::io
