#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "focklimit/sparse_operator.hpp"

namespace focklimit {

inline constexpr double two_pi_cubed = 248.05021344239856;  // (2*pi)^3

// Grid request: either an explicit node/weight list or a centered box lattice.
struct GridSpec {
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  std::array<int, 3> box_shape{{0, 0, 0}};
  double box_spacing = 1.0;

  bool is_box() const { return box_shape[0] > 0 || box_shape[1] > 0 || box_shape[2] > 0; }
};

enum class GridRole { fermion, photon, spatial };

inline std::vector<Eigen::Vector3d> box_nodes(const std::array<int, 3>& shape, double spacing) {
  require(shape[0] > 0 && shape[1] > 0 && shape[2] > 0, "box grid: shape entries must be positive");
  require(spacing > 0.0, "box grid: spacing must be positive");
  std::vector<Eigen::Vector3d> nodes;
  nodes.reserve(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2]);
  for (int i = 0; i < shape[0]; ++i)
    for (int j = 0; j < shape[1]; ++j)
      for (int k = 0; k < shape[2]; ++k)
        nodes.emplace_back((i - 0.5 * (shape[0] - 1)) * spacing,
                           (j - 0.5 * (shape[1] - 1)) * spacing,
                           (k - 0.5 * (shape[2] - 1)) * spacing);
  return nodes;
}

// Finite symmetric momentum grid.  negation[i] indexes the node at -k_i; the
// pairing is required to be exact so that conjugation symmetries of sampled
// functions hold to the last bit.
struct MomentumGrid {
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  std::vector<int> negation;

  int size() const { return static_cast<int>(nodes.size()); }
};

inline MomentumGrid build_momentum_grid(const GridSpec& spec, GridRole role) {
  MomentumGrid g;
  if (spec.is_box()) {
    g.nodes = box_nodes(spec.box_shape, spec.box_spacing);
    const double w = spec.box_spacing * spec.box_spacing * spec.box_spacing;
    g.weights.assign(g.nodes.size(), w);
  } else {
    require(!spec.nodes.empty(), "momentum grid: no nodes given");
    require(spec.nodes.size() == spec.weights.size(),
            "momentum grid: node and weight counts differ");
    g.nodes = spec.nodes;
    g.weights = spec.weights;
  }
  for (double w : g.weights) require(w > 0.0, "momentum grid: weights must be positive");
  if (role == GridRole::photon)
    for (const auto& k : g.nodes)
      require(k.x() != 0.0 || k.y() != 0.0 || k.z() != 0.0,
              "photon grid: node at k = 0 is not allowed (omega vanishes there)");

  // pair every node with its exact negative
  const int n = g.size();
  g.negation.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d m = -g.nodes[i];
    int found = -1;
    for (int j = 0; j < n; ++j)
      if (g.nodes[j].x() == m.x() && g.nodes[j].y() == m.y() && g.nodes[j].z() == m.z()) {
        found = j;
        break;
      }
    require(found >= 0, "momentum grid: not closed under k -> -k");
    require(g.weights[found] == g.weights[i],
            "momentum grid: weights not symmetric under k -> -k");
    g.negation[i] = found;
  }
  return g;
}

struct SpatialGrid {
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  double min_spacing = 1.0;  // shortest pairwise distance; regularizes 1/|x-y| at x = y

  int size() const { return static_cast<int>(nodes.size()); }
};

inline SpatialGrid build_spatial_grid(const GridSpec& spec) {
  SpatialGrid g;
  if (spec.is_box()) {
    g.nodes = box_nodes(spec.box_shape, spec.box_spacing);
    const double w = spec.box_spacing * spec.box_spacing * spec.box_spacing;
    g.weights.assign(g.nodes.size(), w);
  } else {
    require(!spec.nodes.empty(), "spatial grid: no nodes given");
    require(spec.nodes.size() == spec.weights.size(),
            "spatial grid: node and weight counts differ");
    g.nodes = spec.nodes;
    g.weights = spec.weights;
  }
  double min_w = g.weights[0];
  for (double w : g.weights) {
    require(w > 0.0, "spatial grid: weights must be positive");
    min_w = std::min(min_w, w);
  }
  double h = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      const double d = (g.nodes[a] - g.nodes[b]).norm();
      require(d > 0.0, "spatial grid: duplicate nodes");
      h = std::min(h, d);
    }
  // single-node grids have no pairwise distance; fall back to the cell size
  g.min_spacing = std::isfinite(h) ? h : std::cbrt(min_w);
  return g;
}

struct CutoffProfile {
  enum class Kind { one, sharp_ball, gaussian };
  Kind kind = Kind::one;
  double radius = 1.0;  // sharp_ball
  double width = 1.0;   // gaussian

  double operator()(double r) const {
    switch (kind) {
      case Kind::one:
        return 1.0;
      case Kind::sharp_ball:
        return r <= radius ? 1.0 : 0.0;
      case Kind::gaussian:
        return std::exp(-(r / width) * (r / width));
    }
    return 0.0;
  }
  double operator()(const Eigen::Vector3d& k) const { return (*this)(k.norm()); }

  // |chi(k)|^2 / |k|^2 must decay for the continuum kernel integral to exist
  bool integrable_kernel() const { return kind != Kind::one; }

  // radius beyond which the profile is (numerically) zero
  double support_radius() const {
    switch (kind) {
      case Kind::sharp_ball:
        return radius;
      case Kind::gaussian:
        return 6.0 * width;
      case Kind::one:
        break;
    }
    throw std::domain_error("cutoff profile has unbounded support");
  }
};

// Cutoff functions evaluated on their grids, plus the weighted discrete norms
// that the bound constants are built from.
struct CutoffSamples {
  std::vector<cplx> dirac;   // on the fermion momentum grid
  std::vector<cplx> rad;     // on the photon momentum grid
  std::vector<double> spa;   // on the spatial grid
  double dirac_l1 = 0.0, dirac_l2 = 0.0;
  double rad_l1 = 0.0, rad_l2 = 0.0;
  double spa_l1 = 0.0, spa_l2 = 0.0;
};

inline CutoffSamples sample_cutoffs(const CutoffProfile& chi_dirac, const CutoffProfile& chi_rad,
                                    const CutoffProfile& chi_spa, const MomentumGrid& fermion,
                                    const MomentumGrid& photon, const SpatialGrid& spatial) {
  CutoffSamples s;
  s.dirac.reserve(fermion.size());
  for (int i = 0; i < fermion.size(); ++i) {
    const double v = chi_dirac(fermion.nodes[i]);
    s.dirac.emplace_back(v, 0.0);
    s.dirac_l1 += fermion.weights[i] * std::abs(v);
    s.dirac_l2 += fermion.weights[i] * v * v;
  }
  s.rad.reserve(photon.size());
  for (int i = 0; i < photon.size(); ++i) {
    const double v = chi_rad(photon.nodes[i]);
    s.rad.emplace_back(v, 0.0);
    s.rad_l1 += photon.weights[i] * std::abs(v);
    s.rad_l2 += photon.weights[i] * v * v;
  }
  s.spa.reserve(spatial.size());
  for (int a = 0; a < spatial.size(); ++a) {
    const double v = chi_spa(spatial.nodes[a]);
    s.spa.push_back(v);
    s.spa_l1 += spatial.weights[a] * std::abs(v);
    s.spa_l2 += spatial.weights[a] * v * v;
  }
  s.dirac_l2 = std::sqrt(s.dirac_l2);
  s.rad_l2 = std::sqrt(s.rad_l2);
  s.spa_l2 = std::sqrt(s.spa_l2);

  // real even profiles sampled on a symmetric grid: chi(-k) == conj(chi(k)) exactly
  for (int i = 0; i < photon.size(); ++i)
    require(s.rad[photon.negation[i]] == std::conj(s.rad[i]),
            "cutoff samples: radiation cutoff broke conjugate symmetry");
  return s;
}

// weighted l2 pairing over a momentum grid: sum_i w_i conj(f_i) g_i
inline cplx grid_inner(const MomentumGrid& g, const std::vector<cplx>& f,
                       const std::vector<cplx>& h) {
  cplx acc = 0.0;
  for (int i = 0; i < g.size(); ++i) acc += g.weights[i] * std::conj(f[i]) * h[i];
  return acc;
}

inline double grid_norm(const MomentumGrid& g, const std::vector<cplx>& f) {
  double acc = 0.0;
  for (int i = 0; i < g.size(); ++i) acc += g.weights[i] * std::norm(f[i]);
  return std::sqrt(acc);
}

}  // namespace focklimit
