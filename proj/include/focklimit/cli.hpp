#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "focklimit/config.hpp"
#include "focklimit/limit_lab.hpp"
#include "focklimit/model.hpp"
#include "focklimit/report.hpp"
#include "focklimit/suites.hpp"

namespace focklimit {

inline const char* version_string() { return "0.1.0"; }

namespace cli_detail {

namespace fs = std::filesystem;

inline void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + p.string());
  f << content;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw ConfigError("config: cannot read file " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct RunState {
  ModelConfig cfg;
  std::string command;
  std::string format = "csv";
  fs::path out_dir;
  std::vector<std::string> outputs;
};

inline void emit_table(RunState& st, const std::string& stem, const std::string& csv,
                       const ojson& rows) {
  const std::string name = stem + (st.format == "json" ? ".json" : ".csv");
  if (st.format == "json")
    write_file(st.out_dir / name, rows.dump(2) + "\n");
  else
    write_file(st.out_dir / name, csv);
  st.outputs.push_back(name);
}

inline int cmd_kernel(const Model& m, RunState& st) {
  std::vector<Eigen::Vector3d> displacements;
  for (int a = 0; a < m.sgrid.size(); ++a)
    for (int b = 0; b < m.sgrid.size(); ++b) {
      const Eigen::Vector3d z = m.sgrid.nodes[a] - m.sgrid.nodes[b];
      bool seen = false;
      for (const auto& w : displacements)
        seen = seen || (w.x() == z.x() && w.y() == z.y() && w.z() == z.z());
      if (!seen) displacements.push_back(z);
    }
  std::string csv = kernel_csv_header();
  ojson rows = ojson::array();
  for (const auto& z : displacements) {
    const auto k = lambda_discrete(z, m.pgrid, m.cuts.rad);
    csv += to_csv_rows(k);
    for (auto& r : to_json_rows(k)) rows.push_back(r);
  }
  if (m.cfg.cut_rad.integrable_kernel())
    for (const auto& z : displacements) {
      const auto k = lambda_quadrature(z, m.cfg.cut_rad, m.cfg.quadrature);
      csv += to_csv_rows(k);
      for (auto& r : to_json_rows(k)) rows.push_back(r);
    }
  emit_table(st, "kernel", csv, rows);
  return 0;
}

inline int cmd_identities(const Model& m, RunState& st) {
  const SuiteReport r = identity_suite(m);
  write_file(st.out_dir / "identities.json", to_json(r).dump(2) + "\n");
  st.outputs.push_back("identities.json");
  return r.all_pass() ? 0 : 1;
}

inline int cmd_bounds(const Model& m, RunState& st) {
  const SuiteReport r = bound_suite(m, m.cfg.seed);
  write_file(st.out_dir / "bounds.json", to_json(r).dump(2) + "\n");
  st.outputs.push_back("bounds.json");
  return r.all_pass() ? 0 : 1;
}

inline int cmd_sweep(const Model& m, RunState& st) {
  const ProbeVectors pv = sweep_vectors(m, m.cfg.seed);
  const ConvergenceTable t = convergence_sweep(m, m.cfg.lambda_schedule, m.cfg.z, pv,
                                               m.cfg.solver_tol, m.cfg.dense_threshold,
                                               m.cfg.threads);
  emit_table(st, "sweep", to_csv(t), to_json(t));
  return sweep_converges(t, pv) ? 0 : 1;
}

inline int cmd_evolve(const Model& m, RunState& st) {
  const ProbeVectors pv = sweep_vectors(m, m.cfg.seed);
  const auto rows = evolution_sweep(m, m.cfg.lambda_schedule, m.cfg.time, pv);
  emit_table(st, "evolve", to_csv(rows), to_json(rows));
  return evolution_converges(rows) ? 0 : 1;
}

inline int cmd_spectrum(const Model& m, RunState& st) {
  std::vector<double> lambdas = m.cfg.lambda_schedule;
  std::sort(lambdas.begin(), lambdas.end());
  std::vector<SpectrumRow> rows;
  for (double lambda : lambdas) {
    Eigen::SelfAdjointEigenSolver<DenseMat> es(dense(m.scaled_hamiltonian(lambda)),
                                               Eigen::EigenvaluesOnly);
    rows.push_back({"H_scaled", dstr(lambda), es.eigenvalues()(0)});
  }
  Eigen::SelfAdjointEigenSolver<DenseMat> es(dense(m.H_eff), Eigen::EigenvaluesOnly);
  rows.push_back({"H_eff", "", es.eigenvalues()(0)});
  emit_table(st, "spectrum", to_csv(rows), to_json(rows));
  return 0;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args) {
  namespace fs = std::filesystem;
  const auto t_start = std::chrono::steady_clock::now();

  CLI::App app{"finite Fock-space laboratory for the large-cutoff limit of a "
               "cutoff field model"};
  app.fallthrough();
  std::string config_path, out_override, format = "csv";
  std::uint64_t seed_value = 0;
  int threads_value = 0;
  app.add_option("--config", config_path, "JSON model configuration");
  app.add_option("--out", out_override, "output directory (overrides config)");
  app.add_option("--format", format, "table output format")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed_value, "seed override");
  auto* threads_opt = app.add_option("--threads", threads_value, "worker thread override");
  for (const char* name : {"kernel", "identities", "bounds", "sweep", "evolve", "spectrum"})
    app.add_subcommand(name, "");
  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("focklimit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cli_detail::RunState st;
  st.command = app.get_subcommands().front()->get_name();
  st.format = format;

  int code = 0;
  std::string error_msg;
  try {
    if (!config_path.empty()) {
      json parsed;
      try {
        parsed = json::parse(cli_detail::read_file(config_path));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
      }
      st.cfg = config_from_json(parsed);
    } else {
      st.cfg = ModelConfig::defaults();
    }
    if (!out_override.empty()) st.cfg.out_dir = out_override;
    if (seed_opt->count() > 0) st.cfg.seed = seed_value;
    if (threads_opt->count() > 0) st.cfg.threads = threads_value;
    if (const char* env = std::getenv("FOCKLIMIT_THREADS"); env != nullptr && *env != '\0') {
      try {
        st.cfg.threads = std::stoi(env);
      } catch (const std::exception&) {
        throw ConfigError("config: FOCKLIMIT_THREADS is not an integer");
      }
    }
  } catch (const std::exception& e) {
    error_msg = e.what();
    code = 2;
  }

  st.out_dir = !out_override.empty()
                   ? fs::path(out_override)
                   : (!st.cfg.out_dir.empty() ? fs::path(st.cfg.out_dir) : fs::path("out"));
  std::error_code ec;
  fs::create_directories(st.out_dir, ec);

  if (code == 0) {
    try {
      st.cfg.validate();
      const Model m = Model::build(st.cfg);
      if (st.command == "kernel")
        code = cli_detail::cmd_kernel(m, st);
      else if (st.command == "identities")
        code = cli_detail::cmd_identities(m, st);
      else if (st.command == "bounds")
        code = cli_detail::cmd_bounds(m, st);
      else if (st.command == "sweep")
        code = cli_detail::cmd_sweep(m, st);
      else if (st.command == "evolve")
        code = cli_detail::cmd_evolve(m, st);
      else
        code = cli_detail::cmd_spectrum(m, st);
    } catch (const ConfigError& e) {
      error_msg = e.what();
      code = 2;
    } catch (const std::invalid_argument& e) {
      error_msg = e.what();
      code = 2;
    } catch (const std::domain_error& e) {
      error_msg = e.what();
      code = 2;
    } catch (const std::exception& e) {
      error_msg = e.what();
      code = 1;
    }
  }

  // the manifest is written on every run, including failed ones; it carries
  // the timing fields, so downstream byte comparisons should skip it
  ojson manifest;
  manifest["command"] = st.command;
  manifest["exit_code"] = code;
  manifest["error"] = error_msg;
  manifest["outputs"] = st.outputs;
  manifest["format"] = st.format;
  manifest["config"] = config_to_json(st.cfg);
  manifest["versions"]["focklimit"] = version_string();
  manifest["versions"]["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                                  std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION);
  manifest["versions"]["compiler"] = __VERSION__;
  manifest["timings"]["total_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  try {
    cli_detail::write_file(st.out_dir / "run_manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "warning: could not write run manifest: %s\n", e.what());
  }
  if (!error_msg.empty()) std::fprintf(stderr, "error: %s\n", error_msg.c_str());
  return code;
}

}  // namespace focklimit
