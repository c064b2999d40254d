// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lgcalab/errors.hpp"

namespace lgcalab::io {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string macro_csv(const MacroField& field) {
  std::string s = "x,y,rho,ux,uy,Pxx,Pxy,Pyy\n";
  for (int y = 0; y < field.cells_y; ++y) {
    for (int x = 0; x < field.cells_x; ++x) {
      const MacroCell& c = field.at(x, y);
      s += std::to_string(x) + ',' + std::to_string(y) + ',' + format_real(c.rho) + ',' +
           format_real(c.u.x) + ',' + format_real(c.u.y) + ',' + format_real(c.pxx) + ',' +
           format_real(c.pxy) + ',' + format_real(c.pyy) + '\n';
    }
  }
  return s;
}

std::string occupancy_pgm(const LatticeState& state) {
  const Topology& t = state.topology();
  std::string s = "P5\n" + std::to_string(t.width) + ' ' + std::to_string(t.height) + "\n255\n";
  s.reserve(s.size() + t.sites());
  for (auto c : state.cells()) s.push_back(static_cast<char>(popcount6(c) * 255 / t.directions()));
  return s;
}

std::string bitmask_csv(const LatticeState& state) {
  const Topology& t = state.topology();
  std::string s = "x,y,mask\n";
  for (int y = 0; y < t.height; ++y)
    for (int x = 0; x < t.width; ++x)
      s += std::to_string(x) + ',' + std::to_string(y) + ',' + std::to_string(state.at(x, y)) + '\n';
  return s;
}

std::string diagram_pbm(const eca::SpacetimeDiagram& d) {
  const int w = d.width();
  std::string s = "P4\n" + std::to_string(w) + ' ' + std::to_string(d.rows.size()) + '\n';
  for (const auto& row : d.rows) {
    for (int byte = 0; byte < (w + 7) / 8; ++byte) {
      unsigned char packed = 0;
      for (int b = 0; b < 8; ++b) {
        const int x = byte * 8 + b;
        if (x < w && row[static_cast<std::size_t>(x)]) packed |= static_cast<unsigned char>(0x80u >> b);
      }
      s.push_back(static_cast<char>(packed));
    }
  }
  return s;
}

std::string diagram_csv(const eca::SpacetimeDiagram& d) {
  std::string s = "t";
  for (int x = 0; x < d.width(); ++x) s += ",c" + std::to_string(x);
  s += '\n';
  for (std::size_t t = 0; t < d.rows.size(); ++t) {
    s += std::to_string(t);
    for (auto v : d.rows[t]) {
      s += ',';
      s += v ? '1' : '0';
    }
    s += '\n';
  }
  return s;
}

std::string pattern_table_csv(const eca::PatternTable& table) {
  std::string s = "pattern";
  for (int j = 0; j < eca::PatternTable::kRules; ++j) s += ',' + std::to_string(j);
  s += '\n';
  const int l = table.pattern_length();
  for (std::size_t i = 0; i < table.patterns(); ++i) {
    for (int b = l - 1; b >= 0; --b) s += ((i >> b) & 1u) ? '1' : '0';
    for (int j = 0; j < eca::PatternTable::kRules; ++j) s += ',' + std::to_string(table.at(i, j));
    s += '\n';
  }
  return s;
}

std::string spectrum_csv(const pca::Spectrum& spectrum) {
  std::string s = "rank,eigenvalue\n";
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
    s += std::to_string(k + 1) + ',' + format_real(spectrum.eigenvalues[k]) + '\n';
  return s;
}

std::string eigenpairs_csv(const pca::Spectrum& spectrum) {
  const std::size_t n = spectrum.eigenvalues.size();
  std::string s = "rank,eigenvalue";
  for (std::size_t i = 0; i < n; ++i) s += ",v" + std::to_string(i);
  s += '\n';
  for (std::size_t k = 0; k < n; ++k) {
    s += std::to_string(k + 1) + ',' + format_real(spectrum.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) s += ',' + format_real(spectrum.eigenvectors(i, k));
    s += '\n';
  }
  return s;
}

std::string loadings_csv(const Matrix& vectors, int components) {
  require(components >= 1 && static_cast<std::size_t>(components) <= vectors.cols(),
          "loadings: component count out of range");
  std::string s = "rule";
  for (int k = 1; k <= components; ++k) s += ",pc" + std::to_string(k);
  s += '\n';
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    s += std::to_string(i);
    for (int k = 0; k < components; ++k) s += ',' + format_real(vectors(i, static_cast<std::size_t>(k)));
    s += '\n';
  }
  return s;
}

std::string chain_csv(const wsccs::TransitionMatrix& chain) {
  std::string s = "from";
  for (int st : chain.states) s += ',' + std::to_string(st);
  s += '\n';
  for (std::size_t i = 0; i < chain.size(); ++i) {
    s += std::to_string(chain.states[i]);
    for (double v : chain.p.row(i)) s += ',' + format_real(v);
    s += '\n';
  }
  return s;
}

std::string trajectories_csv(const wsccs::Trajectories& paths) {
  std::string s = "trial,t,A_t\n";
  for (int r = 0; r < paths.trials; ++r)
    for (int t = 0; t <= paths.steps; ++t)
      s += std::to_string(r) + ',' + std::to_string(t) + ',' + std::to_string(paths.at(r, t)) + '\n';
  return s;
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    if (first == std::string::npos) return false;
    const auto last = cell.find_last_not_of(" \t\r");
    cell = cell.substr(first, last - first + 1);
    std::size_t used = 0;
    try {
      out.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      return false;
    }
    if (used != cell.size()) return false;
  }
  return !out.empty();
}

}  // namespace

Matrix parse_matrix_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  std::vector<double> values;
  bool first = true;
  while (std::getline(ss, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!parse_row(line, values)) {
      require(first, "matrix csv: non-numeric row " + std::to_string(rows.size() + 1));
      first = false;
      continue;
    }
    first = false;
    require(rows.empty() || values.size() == rows.front().size(), "matrix csv: ragged rows");
    rows.push_back(values);
  }
  require(!rows.empty(), "matrix csv: no numeric rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["version"] = version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace lgcalab::io
