#pragma once

#include <vector>

#include "focklimit/assembly.hpp"
#include "focklimit/config.hpp"
#include "focklimit/dirac.hpp"
#include "focklimit/fock.hpp"
#include "focklimit/grids.hpp"
#include "focklimit/kernels.hpp"
#include "focklimit/radiation.hpp"
#include "focklimit/sparse_operator.hpp"

namespace focklimit {

// Everything derived from a ModelConfig: grids, spinors, field operators per
// coupling site, the Hamiltonian pieces on the factor spaces and on the
// product space, and the norm constants used by the bound suite.
struct Model {
  ModelConfig cfg;

  MomentumGrid fgrid, pgrid;
  SpatialGrid sgrid;
  CutoffSamples cuts;

  DiracRep rep;
  SpinorBasis spinors;
  DiracFields dfields;
  RadiationFields rfields;

  std::vector<std::array<SparseOperator, 4>> psi;  // per spatial node
  std::vector<CurrentSet> currents;
  std::vector<FieldPair> rad_fields;

  SparseOperator H_dirac, H_rad;             // factor spaces
  SparseOperator H_dirac_full, H_rad_full;   // tensored with the identity
  SparseOperator H_int, T_gen;               // product space couplings
  SparseOperator H_coul, H_coul_full;
  SparseOperator V_eff, H_eff;               // fermion factor
  SparseOperator K_limit;                    // -(i e^2/2)[T, H_int]

  DiracBounds dbounds;
  RadiationBounds rbounds;
  CouplingBounds cbounds;

  Index fdim = 0, bdim = 0, dim = 0;
  std::string product_basis;

  SparseOperator scaled_hamiltonian(double lambda) const {
    return build_scaled_hamiltonian(H_dirac_full, H_rad_full, H_int, H_coul_full, cfg.coupling,
                                    lambda);
  }

  // part of H(lambda) that survives undressing: (H_dirac + (e^2/8pi) H_coul) (x) 1
  // plus the scaled field energy
  SparseOperator undressed_reference(double lambda) const {
    require(lambda > 0.0, "undressed reference: lambda must be positive");
    const double e = cfg.coupling;
    return H_dirac_full + (e * e / (8.0 * pi_const)) * H_coul_full +
           (lambda * lambda) * H_rad_full;
  }

  SparseOperator vacuum_sector_projector() const {
    return tensor_product(identity_operator(dfields.basis.label(), fdim),
                          vacuum_projector(rfields.basis));
  }

  Eigen::Matrix3cd delta_kernel(const Eigen::Vector3d& zvec) const {
    return delta_discrete(zvec, pgrid, cuts.rad);
  }

  static Model build(const ModelConfig& cfg) {
    cfg.validate();
    Model m;
    m.cfg = cfg;
    m.fgrid = build_momentum_grid(cfg.fermion_grid, GridRole::fermion);
    m.pgrid = build_momentum_grid(cfg.photon_grid, GridRole::photon);
    m.sgrid = build_spatial_grid(cfg.spatial_grid);
    m.cuts = sample_cutoffs(cfg.cut_dirac, cfg.cut_rad, cfg.cut_spa, m.fgrid, m.pgrid, m.sgrid);

    m.rep = dirac_representation();
    m.spinors = solve_spinor_basis(m.fgrid, cfg.mass, m.rep);
    m.dfields = make_dirac_fields(m.fgrid, m.spinors, m.cuts.dirac);
    m.rfields = make_radiation_fields(m.pgrid, m.cuts.rad, cfg.n_max);

    m.fdim = m.dfields.basis.dim();
    m.bdim = m.rfields.basis.dim();
    m.dim = m.fdim * m.bdim;
    m.product_basis = product_label(m.dfields.basis.label(), m.rfields.basis.label());

    m.psi.reserve(m.sgrid.size());
    m.currents.reserve(m.sgrid.size());
    m.rad_fields.reserve(m.sgrid.size());
    for (int a = 0; a < m.sgrid.size(); ++a) {
      m.psi.push_back(build_psi(m.dfields, m.sgrid.nodes[a]));
      m.currents.push_back(build_current_density(m.dfields, m.rep, m.sgrid.nodes[a]));
      m.rad_fields.push_back(build_radiation_pair(m.rfields, m.sgrid.nodes[a]));
    }

    m.H_dirac = build_H_dirac(m.dfields);
    m.H_rad = build_H_rad(m.rfields);
    const auto id_f = identity_operator(m.dfields.basis.label(), m.fdim);
    const auto id_b = identity_operator(m.rfields.basis.label(), m.bdim);
    m.H_dirac_full = tensor_product(m.H_dirac, id_b);
    m.H_rad_full = tensor_product(id_f, m.H_rad);

    m.H_int = build_current_coupling(m.currents, m.rad_fields, m.sgrid, m.cuts.spa);
    m.T_gen = build_dressing_generator(m.currents, m.rad_fields, m.sgrid, m.cuts.spa);
    m.H_coul = build_coulomb_term(m.currents, m.sgrid, m.cuts.spa);
    m.H_coul_full = tensor_product(m.H_coul, id_b);

    m.V_eff = build_effective_potential(
        m.currents, m.sgrid, m.cuts.spa,
        [&m](const Eigen::Vector3d& zv) { return m.delta_kernel(zv); });
    m.H_eff = build_effective_hamiltonian(m.H_dirac, m.H_coul, m.V_eff, cfg.coupling);
    m.K_limit = build_remainder_operator(m.T_gen, m.H_int, cfg.coupling);

    m.dbounds = dirac_bound_constants(m.dfields, m.rep);
    m.rbounds = radiation_bound_constants(m.rfields);
    m.cbounds = coupling_bound_constants(m.dbounds, m.rbounds, m.rep, m.sgrid, m.cuts.spa,
                                         m.cuts.spa_l1);
    return m;
  }
};

}  // namespace focklimit
