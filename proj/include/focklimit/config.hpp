#pragma once

#include <json.hpp>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "focklimit/grids.hpp"
#include "focklimit/kernels.hpp"

namespace focklimit {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct ModelConfig {
  double mass = 1.0;
  double coupling = 0.5;
  GridSpec fermion_grid;
  GridSpec photon_grid;
  GridSpec spatial_grid;
  CutoffProfile cut_dirac;  // momentum cutoff on the fermion field
  CutoffProfile cut_rad;    // momentum cutoff on the photon field
  CutoffProfile cut_spa;    // spatial localization of the coupling
  int n_max = 2;
  std::vector<double> lambda_schedule{1, 2, 4, 8, 16, 32, 64};
  cplx z{0.0, 1.0};
  double time = 1.0;
  double solver_tol = 1e-10;
  Index dense_threshold = 4096;
  QuadSpec quadrature{};
  std::uint64_t seed = 271828;
  int threads = 1;
  std::string out_dir = "out";

  // single fermion node at rest, photon pair along +-e3, two coupling sites
  static ModelConfig defaults() {
    ModelConfig c;
    c.fermion_grid.nodes = {{0.0, 0.0, 0.0}};
    c.fermion_grid.weights = {1.0};
    c.photon_grid.nodes = {{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
    c.photon_grid.weights = {1.0, 1.0};
    c.spatial_grid.nodes = {{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    c.spatial_grid.weights = {1.0, 1.0};
    return c;
  }

  void validate() const {
    if (!(mass > 0.0)) throw ConfigError("config: mass must be positive");
    if (!(coupling >= 0.0)) throw ConfigError("config: coupling must be nonnegative");
    if (n_max < 1) throw ConfigError("config: n_max must be at least 1");
    if (z.imag() == 0.0)
      throw ConfigError("config: spectral parameter z must have nonzero imaginary part");
    if (lambda_schedule.empty()) throw ConfigError("config: lambda schedule is empty");
    for (double l : lambda_schedule)
      if (!(l > 0.0)) throw ConfigError("config: lambda schedule entries must be positive");
    if (!(solver_tol > 0.0)) throw ConfigError("config: solver tolerance must be positive");
    if (dense_threshold < 1) throw ConfigError("config: dense threshold must be at least 1");
    if (quadrature.radial < 2 || quadrature.angular < 8)
      throw ConfigError("config: quadrature orders too small");
    if (threads < 1) throw ConfigError("config: thread count must be at least 1");
    try {
      (void)build_momentum_grid(fermion_grid, GridRole::fermion);
      (void)build_momentum_grid(photon_grid, GridRole::photon);
      (void)build_spatial_grid(spatial_grid);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
};

namespace detail {

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
  }
}

inline GridSpec grid_from_json(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"nodes", "weights", "box"}, where);
  GridSpec g;
  if (j.contains("box")) {
    if (j.contains("nodes") || j.contains("weights"))
      throw ConfigError("config: " + where + " mixes explicit nodes with a box request");
    const json& b = j.at("box");
    reject_unknown_keys(b, {"shape", "spacing"}, where + ".box");
    const auto shape = b.at("shape").get<std::vector<int>>();
    if (shape.size() != 3) throw ConfigError("config: " + where + ".box.shape needs 3 entries");
    g.box_shape = {shape[0], shape[1], shape[2]};
    g.box_spacing = b.value("spacing", 1.0);
    return g;
  }
  if (!j.contains("nodes") || !j.contains("weights"))
    throw ConfigError("config: " + where + " needs nodes and weights (or a box)");
  for (const auto& n : j.at("nodes")) {
    const auto v = n.get<std::vector<double>>();
    if (v.size() != 3) throw ConfigError("config: " + where + " nodes must have 3 components");
    g.nodes.emplace_back(v[0], v[1], v[2]);
  }
  g.weights = j.at("weights").get<std::vector<double>>();
  return g;
}

inline CutoffProfile profile_from_json(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"profile", "radius", "width"}, where);
  const std::string name = j.at("profile").get<std::string>();
  CutoffProfile p;
  if (name == "one")
    p.kind = CutoffProfile::Kind::one;
  else if (name == "sharp_ball")
    p.kind = CutoffProfile::Kind::sharp_ball;
  else if (name == "gaussian")
    p.kind = CutoffProfile::Kind::gaussian;
  else
    throw ConfigError("config: unknown cutoff profile '" + name + "' in " + where);
  p.radius = j.value("radius", 1.0);
  p.width = j.value("width", 1.0);
  if (!(p.radius > 0.0) || !(p.width > 0.0))
    throw ConfigError("config: cutoff radius/width must be positive in " + where);
  return p;
}

inline ojson grid_to_json(const GridSpec& g) {
  ojson j;
  if (g.is_box()) {
    j["box"]["shape"] = {g.box_shape[0], g.box_shape[1], g.box_shape[2]};
    j["box"]["spacing"] = g.box_spacing;
    return j;
  }
  ojson nodes = ojson::array();
  for (const auto& n : g.nodes) nodes.push_back({n.x(), n.y(), n.z()});
  j["nodes"] = nodes;
  j["weights"] = g.weights;
  return j;
}

inline ojson profile_to_json(const CutoffProfile& p) {
  ojson j;
  switch (p.kind) {
    case CutoffProfile::Kind::one:
      j["profile"] = "one";
      break;
    case CutoffProfile::Kind::sharp_ball:
      j["profile"] = "sharp_ball";
      j["radius"] = p.radius;
      break;
    case CutoffProfile::Kind::gaussian:
      j["profile"] = "gaussian";
      j["width"] = p.width;
      break;
  }
  return j;
}

}  // namespace detail

inline ModelConfig config_from_json(const json& j) {
  detail::reject_unknown_keys(
      j,
      {"mass", "coupling", "fermion_grid", "photon_grid", "spatial_grid", "cutoffs", "n_max",
       "lambda_schedule", "z", "t", "solver_tol", "dense_threshold", "quadrature", "seed",
       "threads", "out_dir"},
      "top level");
  ModelConfig c = ModelConfig::defaults();
  try {
    if (j.contains("mass")) c.mass = j.at("mass").get<double>();
    if (j.contains("coupling")) c.coupling = j.at("coupling").get<double>();
    if (j.contains("fermion_grid"))
      c.fermion_grid = detail::grid_from_json(j.at("fermion_grid"), "fermion_grid");
    if (j.contains("photon_grid"))
      c.photon_grid = detail::grid_from_json(j.at("photon_grid"), "photon_grid");
    if (j.contains("spatial_grid"))
      c.spatial_grid = detail::grid_from_json(j.at("spatial_grid"), "spatial_grid");
    if (j.contains("cutoffs")) {
      const json& cj = j.at("cutoffs");
      detail::reject_unknown_keys(cj, {"dirac", "rad", "spa"}, "cutoffs");
      if (cj.contains("dirac"))
        c.cut_dirac = detail::profile_from_json(cj.at("dirac"), "cutoffs.dirac");
      if (cj.contains("rad")) c.cut_rad = detail::profile_from_json(cj.at("rad"), "cutoffs.rad");
      if (cj.contains("spa")) c.cut_spa = detail::profile_from_json(cj.at("spa"), "cutoffs.spa");
    }
    if (j.contains("n_max")) c.n_max = j.at("n_max").get<int>();
    if (j.contains("lambda_schedule")) {
      c.lambda_schedule = j.at("lambda_schedule").get<std::vector<double>>();
      std::sort(c.lambda_schedule.begin(), c.lambda_schedule.end());
      c.lambda_schedule.erase(std::unique(c.lambda_schedule.begin(), c.lambda_schedule.end()),
                              c.lambda_schedule.end());
    }
    if (j.contains("z")) {
      const json& zj = j.at("z");
      detail::reject_unknown_keys(zj, {"re", "im"}, "z");
      c.z = cplx(zj.value("re", 0.0), zj.value("im", 0.0));
    }
    if (j.contains("t")) c.time = j.at("t").get<double>();
    if (j.contains("solver_tol")) c.solver_tol = j.at("solver_tol").get<double>();
    if (j.contains("dense_threshold")) c.dense_threshold = j.at("dense_threshold").get<Index>();
    if (j.contains("quadrature")) {
      const json& qj = j.at("quadrature");
      detail::reject_unknown_keys(qj, {"radial", "angular"}, "quadrature");
      c.quadrature.radial = qj.value("radial", c.quadrature.radial);
      c.quadrature.angular = qj.value("angular", c.quadrature.angular);
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: malformed value (") + e.what() + ")");
  }
  return c;
}

inline ojson config_to_json(const ModelConfig& c) {
  ojson j;
  j["mass"] = c.mass;
  j["coupling"] = c.coupling;
  j["fermion_grid"] = detail::grid_to_json(c.fermion_grid);
  j["photon_grid"] = detail::grid_to_json(c.photon_grid);
  j["spatial_grid"] = detail::grid_to_json(c.spatial_grid);
  j["cutoffs"]["dirac"] = detail::profile_to_json(c.cut_dirac);
  j["cutoffs"]["rad"] = detail::profile_to_json(c.cut_rad);
  j["cutoffs"]["spa"] = detail::profile_to_json(c.cut_spa);
  j["n_max"] = c.n_max;
  j["lambda_schedule"] = c.lambda_schedule;
  j["z"]["re"] = c.z.real();
  j["z"]["im"] = c.z.imag();
  j["t"] = c.time;
  j["solver_tol"] = c.solver_tol;
  j["dense_threshold"] = c.dense_threshold;
  j["quadrature"]["radial"] = c.quadrature.radial;
  j["quadrature"]["angular"] = c.quadrature.angular;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out_dir"] = c.out_dir;
  return j;
}

}  // namespace focklimit
