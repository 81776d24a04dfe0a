#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "focklimit/limit_lab.hpp"
#include "focklimit/model.hpp"
#include "focklimit/report.hpp"
#include "focklimit/rng.hpp"

namespace focklimit {

namespace detail {

inline double restricted_max_abs(const SparseOperator& x, const SparseOperator& p) {
  return max_abs_entry(x * p);
}

inline double restricted_frobenius(const SparseOperator& x, const SparseOperator& p) {
  return frobenius_norm(x * p);
}

}  // namespace detail

// Algebraic identities of the discretized model, each checked on the largest
// subspace where truncation leaves it exact.
inline SuiteReport identity_suite(const Model& m) {
  SuiteReport report;
  report.suite = "identities";
  const auto& fb = m.dfields.basis;
  const auto& bb = m.rfields.basis;
  const auto id_f = identity_operator(fb.label(), m.fdim);
  const auto id_b = identity_operator(bb.label(), m.bdim);
  const auto cap1 = occupation_cap_projector(bb, m.cfg.n_max - 1);
  const auto cap1_full = tensor_product(id_f, cap1);

  auto add = [&report](const std::string& name, double dev, double tol,
                       const std::string& restriction) {
    report.checks.push_back({name, dev, tol, restriction, dev <= tol});
  };

  {  // canonical anticommutation relations, all mode pairs
    double dev = 0.0;
    for (int i = 0; i < fb.n_modes; ++i) {
      const auto ci = fermion_ladder(fb, Ladder::annihilate, i);
      for (int j = i; j < fb.n_modes; ++j) {
        const auto cj = fermion_ladder(fb, Ladder::annihilate, j);
        dev = std::max(dev, max_abs_entry(anticommutator(ci, cj)));
        auto mixed = anticommutator(ci, cj.adjoint());
        if (i == j) mixed = mixed - id_f;
        dev = std::max(dev, max_abs_entry(mixed));
      }
    }
    add("car_anticommutator", dev, 1e-14, "full fermion space");
  }

  {  // truncated canonical commutation relations
    double dev_full = 0.0, dev_cap = 0.0;
    for (int i = 0; i < bb.n_modes; ++i) {
      const auto ai = boson_ladder(bb, Ladder::annihilate, i);
      for (int j = i; j < bb.n_modes; ++j) {
        const auto aj = boson_ladder(bb, Ladder::annihilate, j);
        dev_full = std::max(dev_full, max_abs_entry(commutator(ai, aj)));
        auto mixed = commutator(ai, aj.adjoint());
        if (i == j) mixed = mixed - id_b;
        dev_cap = std::max(dev_cap, detail::restricted_max_abs(mixed, cap1));
      }
    }
    add("ccr_annihilator_pairs", dev_full, 1e-14, "full photon space");
    add("ccr_mixed_pairs", dev_cap, 1e-14, "occupation <= n_max-1");
  }

  {  // creators are exactly the adjoints of the stored annihilators
    double dev = 0.0;
    for (int i = 0; i < fb.n_modes; ++i)
      dev = std::max(dev, max_abs_entry(fermion_ladder(fb, Ladder::create, i) -
                                        fermion_ladder(fb, Ladder::annihilate, i).adjoint()));
    for (int i = 0; i < bb.n_modes; ++i)
      dev = std::max(dev, max_abs_entry(boson_ladder(bb, Ladder::create, i) -
                                        boson_ladder(bb, Ladder::annihilate, i).adjoint()));
    add("ladder_adjoint_consistency", dev, 1e-14, "full space");
  }

  Rng rng(0xf0c5);

  {  // [dGamma(E), b(f)] = -b(Ef) and the creator counterpart
    double dev = 0.0;
    const int nodes = m.fgrid.size();
    for (FermionSpecies sp : {FermionSpecies::b_up, FermionSpecies::d_dn}) {
      std::vector<cplx> f(nodes), ef(nodes);
      for (int i = 0; i < nodes; ++i) {
        f[i] = rng.complex_normal();
        ef[i] = m.dfields.node_energy[i] * f[i];
      }
      const auto bf = smeared_ladder(fb, Ladder::annihilate, sp, f);
      const auto bef = smeared_ladder(fb, Ladder::annihilate, sp, ef);
      dev = std::max(dev, max_abs_entry(commutator(m.H_dirac, bf) + bef));
      const auto cf = smeared_ladder(fb, Ladder::create, sp, f);
      const auto cef = smeared_ladder(fb, Ladder::create, sp, ef);
      dev = std::max(dev, max_abs_entry(commutator(m.H_dirac, cf) - cef));
    }
    add("fermion_energy_ladder_commutator", dev, 1e-11, "full fermion space");
  }

  {  // [dGamma(omega), a_r(f)] = -a_r(omega f); exact at truncation, both kinds
    double dev = 0.0;
    const int nodes = m.pgrid.size();
    for (int r = 1; r <= 2; ++r) {
      std::vector<cplx> f(nodes), wf(nodes);
      for (int i = 0; i < nodes; ++i) {
        f[i] = rng.complex_normal();
        wf[i] = m.rfields.omega[i] * f[i];
      }
      const auto af = smeared_ladder(bb, Ladder::annihilate, r, f);
      const auto awf = smeared_ladder(bb, Ladder::annihilate, r, wf);
      dev = std::max(dev, max_abs_entry(commutator(m.H_rad, af) + awf));
      const auto cf = smeared_ladder(bb, Ladder::create, r, f);
      const auto cwf = smeared_ladder(bb, Ladder::create, r, wf);
      dev = std::max(dev, max_abs_entry(commutator(m.H_rad, cf) - cwf));
    }
    add("boson_energy_ladder_commutator", dev, 1e-11, "full photon space");
  }

  const cplx iu(0.0, 1.0);

  {  // [Pi_j(x), H_rad] = -i A_j(x)
    double dev = 0.0;
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int j = 0; j < 3; ++j)
        dev = std::max(dev, detail::restricted_max_abs(
                                commutator(m.rad_fields[a].Pi[j], m.H_rad) +
                                    iu * m.rad_fields[a].A[j],
                                cap1));
    add("conjugate_field_energy_commutator", dev, 1e-11, "occupation <= n_max-1");
  }

  if (m.cfg.n_max >= 2) {  // conjugate field components commute among themselves
    const auto cap2 = occupation_cap_projector(bb, m.cfg.n_max - 2);
    double dev = 0.0;
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int b = 0; b < m.sgrid.size(); ++b)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l)
            dev = std::max(dev, detail::restricted_max_abs(
                                    commutator(m.rad_fields[a].Pi[j], m.rad_fields[b].Pi[l]),
                                    cap2));
    add("conjugate_field_self_commutator", dev, 1e-11, "occupation <= n_max-2");
  }

  {  // [A_j(x), Pi_l(y)] = i lambda_{jl}(x - y)
    double dev = 0.0;
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int b = 0; b < m.sgrid.size(); ++b) {
        const auto lam =
            lambda_discrete(m.sgrid.nodes[a] - m.sgrid.nodes[b], m.pgrid, m.cuts.rad);
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l)
            dev = std::max(
                dev, detail::restricted_max_abs(commutator(m.rad_fields[a].A[j],
                                                           m.rad_fields[b].Pi[l]) -
                                                    (iu * lam.entries(j, l)) * id_b,
                                                cap1));
      }
    add("field_pair_commutator_kernel", dev, 1e-11, "occupation <= n_max-1");
  }

  {  // [T, 1 (x) H_rad] = -i H_int
    const double dev = detail::restricted_frobenius(
        commutator(m.T_gen, m.H_rad_full) + iu * m.H_int, cap1_full);
    add("generator_energy_commutator", dev, 1e-11,
        "occupation <= n_max-1 (frobenius upper bound)");
  }

  {  // <vac, Pi_j(x) A_l(y) vac> = -(i/2) lambda_{jl}(x - y)
    double dev = 0.0;
    Vec vac = Vec::Zero(m.bdim);
    vac(0) = 1.0;
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int b = 0; b < m.sgrid.size(); ++b) {
        const auto lam =
            lambda_discrete(m.sgrid.nodes[a] - m.sgrid.nodes[b], m.pgrid, m.cuts.rad);
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            const Vec w = m.rad_fields[a].Pi[j].mat * (m.rad_fields[b].A[l].mat * vac);
            const cplx val = vac.dot(w) + 0.5 * iu * lam.entries(j, l);
            dev = std::max(dev, std::abs(val));
          }
      }
    add("vacuum_pairing_kernel", dev, 1e-12, "vacuum expectation");
  }

  {  // vacuum-sector compression of the remainder reproduces the effective
     // potential built independently from the symmetrized kernel
    const auto p_full = m.vacuum_sector_projector();
    const auto compressed = p_full * m.K_limit * p_full;
    const auto predicted =
        (-m.cfg.coupling * m.cfg.coupling / 4.0) *
        tensor_product(m.V_eff, vacuum_projector(bb));
    const double dev = frobenius_norm(compressed - predicted);
    add("vacuum_compression_matches_effective_potential", dev, 1e-11,
        "vacuum photon sector (frobenius)");
  }

  return report;
}

// Norm inequalities: operator norms on the small factor spaces are measured
// by SVD; relative bounds are sampled on seeded random states.
inline SuiteReport bound_suite(const Model& m, std::uint64_t seed) {
  SuiteReport report;
  report.suite = "bounds";
  Rng rng(seed);
  const auto& fb = m.dfields.basis;
  const auto& bb = m.rfields.basis;
  const int n_states = 50;
  const int n_z = 100;

  auto add = [&report](const std::string& name, double dev, double tol,
                       const std::string& restriction) {
    report.checks.push_back({name, dev, tol, restriction, dev <= tol});
  };

  {  // || b_s(f) || equals the weighted profile norm
    double dev = 0.0;
    const int nodes = m.fgrid.size();
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<cplx> f(nodes), coeff(nodes);
      for (int i = 0; i < nodes; ++i) {
        f[i] = rng.complex_normal();
        coeff[i] = std::sqrt(m.fgrid.weights[i]) * f[i];
      }
      const FermionSpecies sp = trial % 2 == 0 ? FermionSpecies::b_up : FermionSpecies::d_dn;
      const auto op = smeared_ladder(fb, Ladder::annihilate, sp, coeff);
      double fn = 0.0;
      for (int i = 0; i < nodes; ++i) fn += m.fgrid.weights[i] * std::norm(f[i]);
      dev = std::max(dev, std::abs(operator_norm(op) - std::sqrt(fn)));
    }
    add("smeared_fermion_norm_equality", dev, 1e-10, "10 seeded profiles");
  }

  {  // || psi_l(x) || <= M_D[l]
    double dev = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int l = 0; l < 4; ++l)
        dev = std::max(dev, operator_norm(m.psi[a][l]) - m.dbounds.M_D[l]);
    add("field_component_norm", dev, 1e-12, "all components and sites");
  }

  {  // || a_r(f) psi || <= || f / sqrt(omega) || * || H_rad^{1/2} psi ||
    double dev = -std::numeric_limits<double>::infinity();
    const int nodes = m.pgrid.size();
    for (int trial = 0; trial < n_states; ++trial) {
      std::vector<cplx> f(nodes), coeff(nodes);
      double fw = 0.0;
      for (int i = 0; i < nodes; ++i) {
        f[i] = rng.complex_normal();
        coeff[i] = std::sqrt(m.pgrid.weights[i]) * f[i];
        fw += m.pgrid.weights[i] * std::norm(f[i]) / m.rfields.omega[i];
      }
      const int r = trial % 2 + 1;
      const auto op = smeared_ladder(bb, Ladder::annihilate, r, coeff);
      const Vec psi = rng.state(m.bdim);
      const double lhs = (op.mat * psi).norm();
      dev = std::max(dev, lhs - std::sqrt(fw) * energy_half_norm(m.H_rad, psi));
    }
    add("boson_annihilator_relative_bound", dev, 1e-12, "50 seeded states");
  }

  {  // creator version picks up an extra || f || * || psi ||
    double dev = -std::numeric_limits<double>::infinity();
    const int nodes = m.pgrid.size();
    for (int trial = 0; trial < n_states; ++trial) {
      std::vector<cplx> f(nodes), coeff(nodes);
      double fw = 0.0, fn = 0.0;
      for (int i = 0; i < nodes; ++i) {
        f[i] = rng.complex_normal();
        coeff[i] = std::sqrt(m.pgrid.weights[i]) * f[i];
        fw += m.pgrid.weights[i] * std::norm(f[i]) / m.rfields.omega[i];
        fn += m.pgrid.weights[i] * std::norm(f[i]);
      }
      const int r = trial % 2 + 1;
      const auto op = smeared_ladder(bb, Ladder::create, r, coeff);
      const Vec psi = rng.state(m.bdim);
      const double lhs = (op.mat * psi).norm();
      dev = std::max(dev, lhs - std::sqrt(fw) * energy_half_norm(m.H_rad, psi) -
                              std::sqrt(fn) * psi.norm());
    }
    add("boson_creator_relative_bound", dev, 1e-12, "50 seeded states");
  }

  {  // vector potential against the field energy
    double dev = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < n_states; ++trial) {
      const Vec psi = rng.state(m.bdim);
      const double eh = energy_half_norm(m.H_rad, psi);
      for (int a = 0; a < m.sgrid.size(); ++a)
        for (int j = 0; j < 3; ++j) {
          const double lhs = (m.rad_fields[a].A[j].mat * psi).norm();
          double rhs = 0.0;
          for (int r = 0; r < 2; ++r)
            rhs += 2.0 * m.rbounds.M[2][j][r] * eh + m.rbounds.M[1][j][r] * psi.norm();
          dev = std::max(dev, lhs - rhs);
        }
    }
    add("vector_potential_relative_bound", dev, 1e-12, "50 seeded states");
  }

  {  // conjugate field against the field energy
    double dev = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < n_states; ++trial) {
      const Vec psi = rng.state(m.bdim);
      const double eh = energy_half_norm(m.H_rad, psi);
      for (int a = 0; a < m.sgrid.size(); ++a)
        for (int j = 0; j < 3; ++j) {
          const double lhs = (m.rad_fields[a].Pi[j].mat * psi).norm();
          double rhs = 0.0;
          for (int r = 0; r < 2; ++r)
            rhs += m.rbounds.M[4][j][r] * eh + m.rbounds.M[3][j][r] * psi.norm();
          dev = std::max(dev, lhs - rhs);
        }
    }
    add("conjugate_field_relative_bound", dev, 1e-12, "50 seeded states");
  }

  {  // current-field coupling against the field energy
    double dev = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < n_states; ++trial) {
      const Vec psi = rng.state(m.dim);
      const double lhs = (m.H_int.mat * psi).norm();
      const double rhs =
          m.cbounds.L_I * energy_half_norm(m.H_rad_full, psi) + m.cbounds.R_I * psi.norm();
      dev = std::max(dev, lhs - rhs);
    }
    add("current_coupling_relative_bound", dev, 1e-12, "50 seeded states");
  }

  {  // static Coulomb energy against the grid double sum
    double m2 = 0.0;
    for (int l = 0; l < 4; ++l) m2 += m.dbounds.M_D[l] * m.dbounds.M_D[l];
    const double dev = operator_norm(m.H_coul) - m.cbounds.M_II * m2 * m2;
    add("coulomb_term_norm_bound", dev, 1e-12, "operator norm");
  }

  {  // free fermion energy against current components
    double dev = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int j = 0; j < 3; ++j)
        dev = std::max(dev, operator_norm(commutator(m.H_dirac, m.currents[a].current[j])) -
                                m.dbounds.c[j]);
    add("free_energy_current_commutator_bound", dev, 1e-12, "all components and sites");
  }

  {  // density pairs against current components
    double dev = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m.sgrid.size(); ++a)
      for (int b = 0; b < m.sgrid.size(); ++b) {
        const auto pair = m.currents[a].rho * m.currents[b].rho;
        for (int c = 0; c < m.sgrid.size(); ++c)
          for (int j = 0; j < 3; ++j)
            dev = std::max(dev, operator_norm(commutator(pair, m.currents[c].current[j])) -
                                    m.dbounds.d[j]);
      }
    add("density_pair_current_commutator_bound", dev, 1e-12, "all site triples");
  }

  {  // |lambda_{jl}(z)| <= gamma_{jl} entrywise, sampled displacements
    const Eigen::Matrix3d gamma = gamma_bound(m.pgrid, m.cuts.rad);
    double dev = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < n_z; ++trial) {
      const Eigen::Vector3d zv = rng.vec3(-3.0, 3.0);
      const auto lam = lambda_discrete(zv, m.pgrid, m.cuts.rad);
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          dev = std::max(dev, std::abs(lam.entries(j, l)) - gamma(j, l));
    }
    add("kernel_uniform_bound", dev, 1e-12, "100 seeded displacements");
  }

  return report;
}

}  // namespace focklimit
