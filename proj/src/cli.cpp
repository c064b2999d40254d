// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>

#include "lgcalab/collision.hpp"
#include "lgcalab/dynamics.hpp"
#include "lgcalab/eca.hpp"
#include "lgcalab/errors.hpp"
#include "lgcalab/io.hpp"
#include "lgcalab/observables.hpp"
#include "lgcalab/pca.hpp"
#include "lgcalab/wsccs.hpp"

#ifndef LGCALAB_VERSION
#define LGCALAB_VERSION "unknown"
#endif

namespace lgcalab {

namespace fs = std::filesystem;

namespace {

// Collects outputs and writes the manifest once a subcommand finishes.
class Run {
 public:
  Run(std::string name, const CLI::App& app, std::uint64_t seed) {
    manifest_.subcommand = std::move(name);
    manifest_.seed = seed;
    manifest_.version = LGCALAB_VERSION;
    manifest_.started_at = io::utc_timestamp();
    for (const CLI::Option* opt : app.get_options()) {
      const std::string& key = opt->get_single_name();
      if (key == "help") continue;
      std::string value;
      if (opt->count() > 0) {
        for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
      } else {
        value = opt->get_default_str();
      }
      manifest_.parameters[key] = value;
    }
  }

  void write(const fs::path& path, const std::string& contents) {
    io::write_file(path, contents);
    manifest_.outputs.push_back(path.string());
  }

  void finish(const std::string& manifest_override, const fs::path& fallback = {}) {
    manifest_.finished_at = io::utc_timestamp();
    fs::path target;
    if (!manifest_override.empty()) {
      target = manifest_override;
    } else if (!fallback.empty()) {
      target = fallback;
    } else if (!manifest_.outputs.empty()) {
      target = manifest_.outputs.front() + ".manifest.json";
    } else {
      target = "lgcalab-" + manifest_.subcommand + ".manifest.json";
    }
    io::write_file(target, manifest_.to_json());
  }

 private:
  io::RunManifest manifest_;
};

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct LgcaOptions {
  std::string model = "fhp";
  int width = 128;
  int height = 128;
  std::uint64_t steps = 100;
  double density = 3.0;
  std::uint64_t seed = 1;
  std::uint64_t snapshot_every = 0;
  std::string init = "bernoulli";
  int block = 1;
  int window = 1;
  int workers = 1;
  std::string out_dir = "lgca-out";
  bool raw_csv = false;
  bool measure_viscosity = false;
  double u0 = 0.05;
  double fit_floor = 0.3;
};

int lgca_viscosity(const LgcaOptions& o, Run& run, std::ostream& out) {
  require(o.model == "fhp", "--measure-viscosity requires --model fhp");
  ShearWaveConfig cfg;
  cfg.width = o.width;
  cfg.height = o.height;
  cfg.rho = o.density;
  cfg.u0 = o.u0;
  cfg.steps = o.steps;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.fit_floor = o.fit_floor;
  const ShearWaveResult r = measure_viscosity(cfg);
  std::string csv = "t,amplitude\n";
  for (std::size_t t = 0; t < r.amplitude.size(); ++t)
    csv += std::to_string(t) + ',' + io::format_real(r.amplitude[t]) + '\n';
  run.write(fs::path(o.out_dir) / "viscosity.csv", csv);
  const Viscosity predicted = predicted_viscosity(o.density);
  out << "measured nu   " << fixed(r.nu) << "  (fit over " << r.fit_steps << " steps, k = "
      << fixed(r.wavenumber, 6) << ")\n";
  out << "predicted nu  " << fixed(predicted.total) << "  (collision " << fixed(predicted.collision)
      << ", lattice " << fixed(predicted.lattice) << ")\n";
  out << "mass conserved " << (r.mass_conserved ? "yes" : "no") << '\n';
  return r.mass_conserved ? kExitOk : kExitNumerical;
}

int lgca_run(const LgcaOptions& o, Run& run, std::ostream& out) {
  if (o.measure_viscosity) return lgca_viscosity(o, run, out);
  require(o.model == "fhp" || o.model == "hpp", "--model must be hpp or fhp");
  const Model model = o.model == "fhp" ? Model::FHP : Model::HPP;
  const Topology topo(lattice_of(model), o.width, o.height);
  require(o.window >= 1 && static_cast<std::uint64_t>(o.window) <= o.steps + 1,
          "--window must lie in [1, steps + 1]");

  LatticeState state = o.init == "balanced" ? initialize_balanced(topo, o.density, o.seed)
                       : o.init == "bernoulli"
                           ? initialize_bernoulli(topo, o.density, o.seed)
                           : throw std::invalid_argument("--init must be bernoulli or balanced");
  const CollisionTable table = build_collision_table(model);
  const RandomPolicy rng(o.seed);
  OccupationAccumulator acc(topo, o.block);
  const fs::path dir(o.out_dir);

  std::string totals = "t,mass,px,py\n";
  auto record = [&](const LatticeState& s) {
    const IntMomentum p = s.momentum();
    totals += std::to_string(s.time()) + ',' + std::to_string(s.mass()) + ',' +
              std::to_string(p.x) + ',' + std::to_string(p.y) + '\n';
  };
  auto snapshot = [&](const LatticeState& s) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%08llu", static_cast<unsigned long long>(s.time()));
    run.write(dir / (std::string(name) + ".pgm"), io::occupancy_pgm(s));
    if (o.raw_csv) run.write(dir / (std::string(name) + ".csv"), io::bitmask_csv(s));
  };
  auto observe = [&](const LatticeState& s) {
    if (s.time() + static_cast<std::uint64_t>(o.window) > o.steps) acc.add(s);
    if (o.snapshot_every > 0 && s.time() % o.snapshot_every == 0) {
      record(s);
      snapshot(s);
    }
  };

  if (o.snapshot_every == 0) record(state);
  observe(state);
  const std::int64_t mass0 = state.mass();
  const IntMomentum p0 = state.momentum();
  state = lgcalab::run(std::move(state), table, rng, o.steps, o.workers, observe);
  if (o.snapshot_every == 0 || state.time() % o.snapshot_every != 0) record(state);

  run.write(dir / "totals.csv", totals);
  run.write(dir / "macro.csv", io::macro_csv(macro_fields(acc.field())));

  const IntMomentum p1 = state.momentum();
  out << "model " << o.model << "  lattice " << o.width << "x" << o.height << "  steps "
      << o.steps << '\n';
  out << "mass      " << mass0 << " -> " << state.mass() << '\n';
  out << "momentum  (" << p0.x << ", " << p0.y << ") -> (" << p1.x << ", " << p1.y << ")"
      << (model == Model::FHP ? "  [half-unit lattice components]" : "") << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice-gas, cellular-automaton, PCA and WSCCS toolkit", "lgcalab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", LGCALAB_VERSION);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path, "Where to write the run manifest");

  std::function<int()> action;
  auto seed_option = [](CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "Random seed")
        ->envname("LGCALAB_SEED")
        ->capture_default_str();
  };

  // lgca run
  LgcaOptions lg;
  CLI::App* lgca = app.add_subcommand("lgca", "Lattice-gas cellular automata");
  lgca->require_subcommand(1);
  CLI::App* lgca_run_cmd = lgca->add_subcommand("run", "Run an HPP or FHP simulation");
  lgca_run_cmd->add_option("--model", lg.model)->check(CLI::IsMember({"hpp", "fhp"}))->capture_default_str();
  lgca_run_cmd->add_option("--width", lg.width)->check(CLI::PositiveNumber)->capture_default_str();
  lgca_run_cmd->add_option("--height", lg.height)->check(CLI::PositiveNumber)->capture_default_str();
  lgca_run_cmd->add_option("--steps", lg.steps)->capture_default_str();
  lgca_run_cmd->add_option("--density", lg.density, "Mean particles per site")->capture_default_str();
  seed_option(lgca_run_cmd, lg.seed);
  lgca_run_cmd->add_option("--snapshot-every", lg.snapshot_every)->capture_default_str();
  lgca_run_cmd->add_option("--init", lg.init)->check(CLI::IsMember({"bernoulli", "balanced"}))->capture_default_str();
  lgca_run_cmd->add_option("--block", lg.block, "Coarse-graining block size")->capture_default_str();
  lgca_run_cmd->add_option("--window", lg.window, "Averaging window in steps")->capture_default_str();
  lgca_run_cmd->add_option("--workers", lg.workers)->check(CLI::PositiveNumber)->capture_default_str();
  lgca_run_cmd->add_option("--out-dir", lg.out_dir)->capture_default_str();
  lgca_run_cmd->add_flag("--raw-csv", lg.raw_csv, "Also write site bitmasks as CSV");
  lgca_run_cmd->add_flag("--measure-viscosity", lg.measure_viscosity, "Shear-wave decay probe");
  lgca_run_cmd->add_option("--u0", lg.u0, "Shear-wave amplitude (units of v)")->capture_default_str();
  lgca_run_cmd->add_option("--fit-floor", lg.fit_floor)->capture_default_str();
  lgca_run_cmd->callback([&] {
    action = [&] {
      Run run("lgca-run", *lgca_run_cmd, lg.seed);
      const int rc = lgca_run(lg, run, out);
      run.finish(manifest_path, fs::path(lg.out_dir) / "manifest.json");
      return rc;
    };
  });

  // eca run / eca table
  CLI::App* eca_cmd = app.add_subcommand("eca", "Elementary cellular automata");
  eca_cmd->require_subcommand(1);
  int rule = 90, eca_width = 64, eca_steps = 32, pattern_length = 5;
  std::string eca_init = "single", eca_boundary = "zero", eca_out = "eca", table_out = "pattern_table.csv";
  std::uint64_t eca_seed = 1;
  CLI::App* eca_run = eca_cmd->add_subcommand("run", "Evolve one rule into a spacetime diagram");
  eca_run->add_option("--rule", rule)->check(CLI::Range(0, 255))->capture_default_str();
  eca_run->add_option("--width", eca_width)->check(CLI::Range(3, 1 << 20))->capture_default_str();
  eca_run->add_option("--steps", eca_steps)->check(CLI::NonNegativeNumber)->capture_default_str();
  eca_run->add_option("--init", eca_init)->check(CLI::IsMember({"single", "random"}))->capture_default_str();
  eca_run->add_option("--boundary", eca_boundary)->check(CLI::IsMember({"zero", "periodic"}))->capture_default_str();
  seed_option(eca_run, eca_seed);
  eca_run->add_option("--out", eca_out, "Output prefix for .pbm and .csv")->capture_default_str();
  eca_run->callback([&] {
    action = [&] {
      Run run("eca-run", *eca_run, eca_seed);
      const eca::Row init = eca_init == "single" ? eca::single_seed_row(eca_width)
                                                 : eca::random_row(eca_width, eca_seed);
      const auto diagram =
          eca::evolve(eca::Rule(rule), init, eca_steps,
                      eca_boundary == "zero" ? eca::Boundary::FixedZero : eca::Boundary::Periodic);
      run.write(eca_out + ".pbm", io::diagram_pbm(diagram));
      run.write(eca_out + ".csv", io::diagram_csv(diagram));
      out << "rule " << rule << ": " << diagram.rows.size() << " rows x " << eca_width
          << " cells -> " << eca_out << ".pbm\n";
      run.finish(manifest_path);
      return static_cast<int>(kExitOk);
    };
  });
  CLI::App* eca_table = eca_cmd->add_subcommand("table", "Pattern-response table for all 256 rules");
  eca_table->add_option("--l", pattern_length, "Pattern length")->required();
  eca_table->add_option("--out", table_out)->capture_default_str();
  eca_table->callback([&] {
    action = [&] {
      Run run("eca-table", *eca_table, 0);
      run.write(table_out, io::pattern_table_csv(eca::build_pattern_table(pattern_length)));
      out << "pattern table l=" << pattern_length << " -> " << table_out << '\n';
      run.finish(manifest_path);
      return static_cast<int>(kExitOk);
    };
  });

  // pca rulespace / pca eig
  CLI::App* pca_cmd = app.add_subcommand("pca", "Principal component analysis");
  pca_cmd->require_subcommand(1);
  int rs_length = 4, components = 7;
  std::string out_spectrum, out_loadings, eig_in, eig_out;
  CLI::App* rulespace = pca_cmd->add_subcommand("rulespace", "Correlation spectrum of the ECA rule space");
  rulespace->add_option("--l", rs_length, "Pattern length (3..12)")->required();
  rulespace->add_option("--out-spectrum", out_spectrum);
  rulespace->add_option("--out-loadings", out_loadings);
  rulespace->add_option("--components", components, "Leading components to print and export")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  rulespace->callback([&] {
    action = [&] {
      Run run("pca-rulespace", *rulespace, 0);
      const pca::RulespaceAnalysis a = pca::analyze_rulespace(rs_length);
      const auto& ev = a.spectrum.eigenvalues;
      out << "l=" << rs_length << " leading eigenvalues:";
      for (int k = 0; k < components; ++k) out << ' ' << fixed(ev[static_cast<std::size_t>(k)]);
      double sum = 0.0;
      for (double v : ev) sum += v;
      out << "\nsum of eigenvalues " << fixed(sum, 6) << "  lambda8 " << io::format_real(ev[7])
          << "  masked columns " << a.norm.mask_size() << '\n';
      if (!out_spectrum.empty()) run.write(out_spectrum, io::spectrum_csv(a.spectrum));
      if (!out_loadings.empty())
        run.write(out_loadings, io::loadings_csv(a.spectrum.eigenvectors, components));
      run.finish(manifest_path);
      return static_cast<int>(kExitOk);
    };
  });
  CLI::App* eig = pca_cmd->add_subcommand("eig", "Symmetric eigensolve of a CSV matrix");
  eig->add_option("--in", eig_in)->required();
  eig->add_option("--out", eig_out)->required();
  eig->callback([&] {
    action = [&] {
      Run run("pca-eig", *eig, 0);
      const Matrix m = io::parse_matrix_csv(io::read_file(eig_in));
      const pca::Spectrum s = pca::eig_sym(m);
      run.write(eig_out, io::eigenpairs_csv(s));
      out << m.rows() << "x" << m.cols() << " eigensolve converged in " << s.sweeps
          << " sweeps -> " << eig_out << '\n';
      run.finish(manifest_path);
      return static_cast<int>(kExitOk);
    };
  });

  // wsccs colony
  CLI::App* wsccs_cmd = app.add_subcommand("wsccs", "Process-algebra colony models");
  wsccs_cmd->require_subcommand(1);
  int colony_n = 4, colony_steps = 10, trials = 1000, start = -1, workers = 1;
  double colony_p = 0.5;
  std::uint64_t colony_seed = 1;
  bool exact_check = false;
  std::string colony_out;
  CLI::App* colony = wsccs_cmd->add_subcommand("colony", "Active/passive ant colony chain");
  colony->add_option("--n", colony_n, "Number of ants")->required();
  colony->add_option("--p", colony_p, "Per-tick probability Active -> Passive")->required();
  colony->add_option("--steps", colony_steps)->capture_default_str();
  colony->add_option("--trials", trials)->capture_default_str();
  seed_option(colony, colony_seed);
  colony->add_option("--start", start, "Initial active count (default n)");
  colony->add_option("--workers", workers)->check(CLI::PositiveNumber)->capture_default_str();
  colony->add_option("--out-dir", colony_out, "Write chain, trajectories and distributions here");
  colony->add_flag("--exact-check", exact_check,
                   "Compare the binomial chain against the exact product expansion");
  colony->callback([&] {
    action = [&] {
      Run run("wsccs-colony", *colony, colony_seed);
      const wsccs::TransitionMatrix chain = wsccs::colony_matrix(colony_n, colony_p);
      const int from = start < 0 ? colony_n : start;
      require(from <= colony_n, "--start must lie in [0, n]");
      require(colony_steps >= 0, "--steps must be non-negative");
      int rc = kExitOk;
      if (exact_check) {
        require(colony_n <= wsccs::kMaxExactAgents, "--exact-check supports n <= 16");
        double worst = 0.0;
        for (int i = 0; i <= colony_n; ++i) {
          const auto row = wsccs::colony_step_by_expansion(colony_n, i, colony_p);
          for (int k = 0; k <= colony_n; ++k)
            worst = std::max(worst, std::abs(row[static_cast<std::size_t>(k)] -
                                             chain.p(static_cast<std::size_t>(i), static_cast<std::size_t>(k))));
        }
        const bool ok = worst <= 1e-12;
        out << "exact check: max |expansion - binomial| = " << io::format_real(worst)
            << (ok ? "  OK\n" : "  MISMATCH\n");
        if (!ok) rc = kExitNumerical;
      }
      const wsccs::ChainAnalysis an = wsccs::analyze(chain, from, colony_steps);
      const wsccs::Trajectories paths =
          wsccs::simulate(chain, from, colony_steps, trials, colony_seed, workers);
      double mean = 0.0;
      for (int r = 0; r < trials; ++r) mean += paths.at(r, colony_steps);
      mean /= trials;
      double exact_mean = 0.0;
      for (std::size_t k = 0; k < chain.size(); ++k) exact_mean += static_cast<double>(k) * an.distribution.back()[k];
      out << "n=" << colony_n << " p=" << colony_p << " start=" << from << '\n';
      out << "E[A_" << colony_steps << "] exact " << fixed(exact_mean, 6) << "  simulated "
          << fixed(mean, 6) << " (" << trials << " trials)\n";
      out << "expected absorption time " << fixed(an.expected_hitting_time[static_cast<std::size_t>(from)], 6)
          << '\n';
      if (!colony_out.empty()) {
        const fs::path dir(colony_out);
        run.write(dir / "chain.csv", io::chain_csv(chain));
        run.write(dir / "trajectories.csv", io::trajectories_csv(paths));
        std::string dist = "t";
        for (std::size_t k = 0; k < chain.size(); ++k) dist += ",p" + std::to_string(k);
        dist += '\n';
        for (std::size_t t = 0; t < an.distribution.size(); ++t) {
          dist += std::to_string(t);
          for (double v : an.distribution[t]) dist += ',' + io::format_real(v);
          dist += '\n';
        }
        run.write(dir / "distribution.csv", dist);
      }
      run.finish(manifest_path);
      return rc;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lgcalab
