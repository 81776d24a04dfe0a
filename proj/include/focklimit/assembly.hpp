#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "focklimit/dirac.hpp"
#include "focklimit/grids.hpp"
#include "focklimit/kernels.hpp"
#include "focklimit/radiation.hpp"
#include "focklimit/sparse_operator.hpp"

namespace focklimit {

// Regularized Coulomb kernel 1/max(|z|, h/2); h is the spatial grid spacing,
// so the self-interaction at z = 0 carries the energy of one grid cell.
inline double coulomb_kernel(const Eigen::Vector3d& z, double h) {
  return 1.0 / std::max(z.norm(), 0.5 * h);
}

// current-field coupling: sum_a v_a chi(x_a) sum_j J_j(x_a) (x) A_j(x_a)
inline SparseOperator build_current_coupling(const std::vector<CurrentSet>& currents,
                                             const std::vector<FieldPair>& rad,
                                             const SpatialGrid& sg,
                                             const std::vector<double>& chi_spa) {
  require(currents.size() == rad.size() && static_cast<int>(currents.size()) == sg.size(),
          "current coupling: per-node operator counts do not match the spatial grid");
  SparseOperator acc = tensor_product(0.0 * currents[0].current[0], rad[0].A[0]);
  for (int a = 0; a < sg.size(); ++a) {
    const double v = sg.weights[a] * chi_spa[a];
    if (v == 0.0) continue;
    for (int j = 0; j < 3; ++j)
      acc = acc + v * tensor_product(currents[a].current[j], rad[a].A[j]);
  }
  mark_hermitian(acc, 1e-13);
  return acc;
}

// dressing generator: same coupling pattern with the conjugate field
inline SparseOperator build_dressing_generator(const std::vector<CurrentSet>& currents,
                                               const std::vector<FieldPair>& rad,
                                               const SpatialGrid& sg,
                                               const std::vector<double>& chi_spa) {
  require(currents.size() == rad.size() && static_cast<int>(currents.size()) == sg.size(),
          "dressing generator: per-node operator counts do not match the spatial grid");
  SparseOperator acc = tensor_product(0.0 * currents[0].current[0], rad[0].Pi[0]);
  for (int a = 0; a < sg.size(); ++a) {
    const double v = sg.weights[a] * chi_spa[a];
    if (v == 0.0) continue;
    for (int j = 0; j < 3; ++j)
      acc = acc + v * tensor_product(currents[a].current[j], rad[a].Pi[j]);
  }
  mark_hermitian(acc, 1e-13);
  return acc;
}

// static density-density energy on the fermion factor:
//   sum_{a,b} v_a v_b chi(x_a) chi(x_b) k_C(x_a - x_b) rho(x_a) rho(x_b)
inline SparseOperator build_coulomb_term(const std::vector<CurrentSet>& currents,
                                         const SpatialGrid& sg,
                                         const std::vector<double>& chi_spa) {
  require(static_cast<int>(currents.size()) == sg.size(),
          "coulomb term: per-node operator counts do not match the spatial grid");
  SparseOperator acc = 0.0 * currents[0].rho;
  for (int a = 0; a < sg.size(); ++a)
    for (int b = 0; b < sg.size(); ++b) {
      const double c = sg.weights[a] * sg.weights[b] * chi_spa[a] * chi_spa[b] *
                       coulomb_kernel(sg.nodes[a] - sg.nodes[b], sg.min_spacing);
      if (c == 0.0) continue;
      acc = acc + c * (currents[a].rho * currents[b].rho);
    }
  mark_hermitian(acc, 1e-13);
  return acc;
}

// H(lambda) = H_dirac (x) 1 + lambda^2 1 (x) H_rad + e lambda H_int
//             + (e^2 / 8pi) H_coulomb (x) 1
inline SparseOperator build_scaled_hamiltonian(const SparseOperator& h_dirac_full,
                                               const SparseOperator& h_rad_full,
                                               const SparseOperator& h_int,
                                               const SparseOperator& h_coul_full, double e,
                                               double lambda) {
  require(lambda > 0.0, "scaled hamiltonian: lambda must be positive");
  SparseOperator h = h_dirac_full + (lambda * lambda) * h_rad_full + (e * lambda) * h_int +
                     (e * e / (8.0 * pi_const)) * h_coul_full;
  mark_hermitian(h, 1e-12);
  return h;
}

// transverse current-current potential on the fermion factor:
//   sum_{a,b} v_a v_b chi_a chi_b sum_{j,l} delta_{jl}(x_a - x_b) J_j(x_a) J_l(x_b)
inline SparseOperator build_effective_potential(
    const std::vector<CurrentSet>& currents, const SpatialGrid& sg,
    const std::vector<double>& chi_spa,
    const std::function<Eigen::Matrix3cd(const Eigen::Vector3d&)>& delta) {
  require(static_cast<int>(currents.size()) == sg.size(),
          "effective potential: per-node operator counts do not match the spatial grid");
  SparseOperator acc = 0.0 * currents[0].current[0];
  for (int a = 0; a < sg.size(); ++a)
    for (int b = 0; b < sg.size(); ++b) {
      const double c = sg.weights[a] * sg.weights[b] * chi_spa[a] * chi_spa[b];
      if (c == 0.0) continue;
      const Eigen::Matrix3cd d = delta(sg.nodes[a] - sg.nodes[b]);
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          const cplx w = c * d(j, l);
          if (w == cplx(0.0, 0.0)) continue;
          acc = acc + w * (currents[a].current[j] * currents[b].current[l]);
        }
    }
  mark_hermitian(acc, 1e-12);
  return acc;
}

// H_eff = H_dirac + (e^2/8pi) H_coulomb - (e^2/4) V_eff, all on the fermion factor
inline SparseOperator build_effective_hamiltonian(const SparseOperator& h_dirac,
                                                  const SparseOperator& h_coul,
                                                  const SparseOperator& v_eff, double e) {
  SparseOperator h =
      h_dirac + (e * e / (8.0 * pi_const)) * h_coul - (e * e / 4.0) * v_eff;
  mark_hermitian(h, 1e-12);
  return h;
}

// Second-order remainder of the dressed coupling, K = -(i e^2 / 2) [T, H_int];
// its vacuum-sector compression reproduces -(e^2/4) V_eff.
inline SparseOperator build_remainder_operator(const SparseOperator& t_gen,
                                               const SparseOperator& h_int, double e) {
  const cplx c(0.0, -0.5 * e * e);
  SparseOperator k = c * commutator(t_gen, h_int);
  mark_hermitian(k, 1e-12);
  return k;
}

// Constants coupling the two sectors: the Coulomb double sum and the relative
// bound of the current-field coupling against the field energy.
struct CouplingBounds {
  double M_II = 0.0;  // ||H_coulomb|| <= M_II * (sum_l M_D[l]^2)^2
  double L_I = 0.0;   // ||H_int psi|| <= L_I ||(1 (x) H_rad)^{1/2} psi|| + R_I ||psi||
  double R_I = 0.0;
};

inline CouplingBounds coupling_bound_constants(const DiracBounds& db, const RadiationBounds& rb,
                                               const DiracRep& rep, const SpatialGrid& sg,
                                               const std::vector<double>& chi_spa,
                                               double chi_spa_l1) {
  CouplingBounds cb;
  for (int a = 0; a < sg.size(); ++a)
    for (int b = 0; b < sg.size(); ++b)
      cb.M_II += sg.weights[a] * sg.weights[b] * std::abs(chi_spa[a] * chi_spa[b]) *
                 coulomb_kernel(sg.nodes[a] - sg.nodes[b], sg.min_spacing);
  double l_sum = 0.0, r_sum = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 4; ++l)
      for (int lp = 0; lp < 4; ++lp) {
        const double a = std::abs(rep.alpha[j](l, lp));
        if (a == 0.0) continue;
        for (int r = 0; r < 2; ++r) {
          l_sum += a * db.M_D[l] * db.M_D[lp] * rb.M[2][j][r];
          r_sum += a * db.M_D[l] * db.M_D[lp] * rb.M[1][j][r];
        }
      }
  cb.L_I = 2.0 * chi_spa_l1 * l_sum;
  cb.R_I = chi_spa_l1 * r_sum;
  return cb;
}

}  // namespace focklimit
