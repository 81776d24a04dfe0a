#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "focklimit/fock.hpp"
#include "focklimit/grids.hpp"
#include "focklimit/sparse_operator.hpp"

namespace focklimit {

// Deterministic transverse frame at k: project out of k-hat the coordinate
// axis least aligned with it (lowest index on ties), then complete with the
// cross product.  For k along +e3 this yields eps1 = e1, eps2 = e2.
inline std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_pair(const Eigen::Vector3d& k) {
  const double kn = k.norm();
  require(kn > 0.0, "polarization: k = 0 has no transverse plane");
  const Eigen::Vector3d khat = k / kn;
  int axis = 0;
  double best = std::abs(khat[0]);
  for (int m = 1; m < 3; ++m)
    if (std::abs(khat[m]) < best) {
      best = std::abs(khat[m]);
      axis = m;
    }
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[axis] = 1.0;
  const Eigen::Vector3d eps1 = (e - e.dot(khat) * khat).normalized();
  const Eigen::Vector3d eps2 = khat.cross(eps1);
  return {eps1, eps2};
}

// Photon-sector data: polarization frames and the cutoff-weighted mode
// profiles h_jr(k) = chi(k) eps_jr(k) / sqrt(2 (2pi)^3 |k|).
struct RadiationFields {
  BosonBasis basis;
  MomentumGrid grid;
  std::vector<std::array<Eigen::Vector3d, 2>> eps;        // per node
  std::array<std::array<std::vector<cplx>, 2>, 3> h;      // [component][pol-1][node]
  std::vector<double> omega;                              // per node
  std::vector<double> mode_energy;                        // per boson mode
};

inline RadiationFields make_radiation_fields(const MomentumGrid& grid,
                                             const std::vector<cplx>& chi_rad, int n_max) {
  require(static_cast<int>(chi_rad.size()) == grid.size(),
          "radiation fields: cutoff sample count does not match grid");
  RadiationFields rf;
  rf.basis = make_boson_basis(2 * grid.size(), n_max);
  rf.grid = grid;
  rf.eps.resize(grid.size());
  rf.omega.resize(grid.size());
  rf.mode_energy.resize(2 * grid.size());
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 2; ++r) rf.h[j][r].resize(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double w = grid.nodes[i].norm();
    rf.omega[i] = w;
    rf.mode_energy[2 * i] = w;
    rf.mode_energy[2 * i + 1] = w;
    auto [e1, e2] = polarization_pair(grid.nodes[i]);
    rf.eps[i] = {e1, e2};
    const double denom = std::sqrt(2.0 * two_pi_cubed * w);
    for (int j = 0; j < 3; ++j) {
      rf.h[j][0][i] = chi_rad[i] * e1[j] / denom;
      rf.h[j][1][i] = chi_rad[i] * e2[j] / denom;
    }
  }
  return rf;
}

inline SparseOperator build_H_rad(const RadiationFields& rf) {
  return second_quantize(rf.basis, rf.mode_energy);
}

struct FieldPair {
  std::array<SparseOperator, 3> A;   // vector potential components
  std::array<SparseOperator, 3> Pi;  // conjugate field components
};

// A_j(x) = sum_r a_r(h_j e^{-ikx}) + a*_r(h_j e^{-ikx})
// Pi_j(x) = i sum_r ( a*_r(h_j/omega e^{-ikx}) - a_r(h_j/omega e^{-ikx}) )
inline FieldPair build_radiation_pair(const RadiationFields& rf, const Eigen::Vector3d& x) {
  const cplx i_unit(0.0, 1.0);
  const cplx mi(0.0, -1.0);
  const Index dim = rf.basis.dim();
  const std::string label = rf.basis.label();
  FieldPair out{{zero_operator(label, dim), zero_operator(label, dim), zero_operator(label, dim)},
                {zero_operator(label, dim), zero_operator(label, dim), zero_operator(label, dim)}};
  std::vector<cplx> phase(rf.grid.size());
  for (int i = 0; i < rf.grid.size(); ++i)
    phase[i] = std::sqrt(rf.grid.weights[i]) * std::exp(mi * rf.grid.nodes[i].dot(x));
  std::vector<cplx> coeff(rf.grid.size());
  for (int j = 0; j < 3; ++j)
    for (int r = 1; r <= 2; ++r) {
      for (int i = 0; i < rf.grid.size(); ++i) coeff[i] = phase[i] * rf.h[j][r - 1][i];
      const auto ann = smeared_ladder(rf.basis, Ladder::annihilate, r, coeff);
      const auto cre = smeared_ladder(rf.basis, Ladder::create, r, coeff);
      out.A[j] = out.A[j] + ann + cre;
      for (int i = 0; i < rf.grid.size(); ++i) coeff[i] /= rf.omega[i];
      const auto ann_w = smeared_ladder(rf.basis, Ladder::annihilate, r, coeff);
      const auto cre_w = smeared_ladder(rf.basis, Ladder::create, r, coeff);
      out.Pi[j] = out.Pi[j] + i_unit * (cre_w - ann_w);
    }
  for (int j = 0; j < 3; ++j) {
    mark_hermitian(out.A[j], 1e-13);
    mark_hermitian(out.Pi[j], 1e-13);
  }
  return out;
}

// M[m][j][r-1] = || h_jr / omega^{(m-1)/2} ||, the weighted profile norms that
// control A and Pi relative to the field energy
struct RadiationBounds {
  std::array<std::array<std::array<double, 2>, 3>, 5> M{};  // index m = 1..4 used
};

inline RadiationBounds radiation_bound_constants(const RadiationFields& rf) {
  RadiationBounds b;
  for (int m = 1; m <= 4; ++m)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 2; ++r) {
        double acc = 0.0;
        for (int i = 0; i < rf.grid.size(); ++i)
          acc += rf.grid.weights[i] * std::norm(rf.h[j][r][i]) /
                 std::pow(rf.omega[i], static_cast<double>(m - 1));
        b.M[m][j][r] = std::sqrt(acc);
      }
  return b;
}

// sqrt(<psi, H psi>) for a positive operator; the natural size of a state as
// seen by relative bounds
inline double energy_half_norm(const SparseOperator& h, const Vec& psi) {
  const cplx q = psi.dot(h.mat * psi);
  return std::sqrt(std::max(0.0, q.real()));
}

}  // namespace focklimit
