#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <vector>

#include "focklimit/fock.hpp"
#include "focklimit/grids.hpp"
#include "focklimit/sparse_operator.hpp"

namespace focklimit {

struct DiracRep {
  std::array<Eigen::Matrix4cd, 3> alpha;
  Eigen::Matrix4cd beta;
};

inline DiracRep dirac_representation() {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  DiracRep rep;
  rep.beta.setZero();
  rep.beta.diagonal() << 1, 1, -1, -1;
  const std::array<Eigen::Matrix2cd, 3> sigma{s1, s2, s3};
  for (int j = 0; j < 3; ++j) {
    rep.alpha[j].setZero();
    rep.alpha[j].block<2, 2>(0, 2) = sigma[j];
    rep.alpha[j].block<2, 2>(2, 0) = sigma[j];
  }
  return rep;
}

inline void validate_representation(const DiracRep& rep, double tol = 1e-13) {
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  auto check = [&](const Eigen::Matrix4cd& m, const char* what) {
    require(m.cwiseAbs().maxCoeff() <= tol, std::string("dirac representation: ") + what);
  };
  for (int j = 0; j < 3; ++j) {
    check(rep.alpha[j] - rep.alpha[j].adjoint(), "alpha not hermitian");
    check(rep.alpha[j] * rep.beta + rep.beta * rep.alpha[j], "alpha/beta anticommutator nonzero");
    for (int l = 0; l < 3; ++l) {
      const Eigen::Matrix4cd ac = rep.alpha[j] * rep.alpha[l] + rep.alpha[l] * rep.alpha[j];
      check(ac - (j == l ? 2.0 : 0.0) * id, "alpha anticommutation relations fail");
    }
  }
  check(rep.beta - rep.beta.adjoint(), "beta not hermitian");
  check(rep.beta * rep.beta - id, "beta squared is not the identity");
}

// spin generators recovered from the alpha matrices; reduces to
// (1/2) diag(sigma_j, sigma_j) in the standard representation
inline std::array<Eigen::Matrix4cd, 3> spin_matrices(const DiracRep& rep) {
  const cplx i(0.0, 1.0);
  std::array<Eigen::Matrix4cd, 3> s;
  for (int j = 0; j < 3; ++j) {
    const int k = (j + 1) % 3, l = (j + 2) % 3;
    s[j] = (rep.alpha[k] * rep.alpha[l] - rep.alpha[l] * rep.alpha[k]) / (4.0 * i);
  }
  return s;
}

inline double relativistic_energy(const Eigen::Vector3d& p, double mass) {
  return std::sqrt(p.squaredNorm() + mass * mass);
}

// Positive/negative-energy eigenspinors at one momentum node, labelled by
// helicity (spin projection along p, or along e3 when p = 0).
struct SpinorNode {
  double energy = 0.0;
  std::array<Eigen::Vector4cd, 2> u;  // [0] spin +1/2, [1] spin -1/2
  std::array<Eigen::Vector4cd, 2> v;
};

namespace detail {

// deterministic gauge: rotate the largest component (lowest index on ties)
// onto the positive real axis
inline void fix_phase(Eigen::Vector4cd& w) {
  int best = 0;
  double mag = std::abs(w(0));
  for (int l = 1; l < 4; ++l) {
    const double a = std::abs(w(l));
    if (a > mag) {
      mag = a;
      best = l;
    }
  }
  if (mag > 0.0) w *= std::conj(w(best)) / mag;
}

}  // namespace detail

inline SpinorNode solve_spinor_node(const Eigen::Vector3d& p, double mass, const DiracRep& rep) {
  require(mass > 0.0, "spinor solve: mass must be positive");
  Eigen::Matrix4cd h = mass * rep.beta;
  for (int j = 0; j < 3; ++j) h += p[j] * rep.alpha[j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  const double energy = relativistic_energy(p, mass);

  const auto spin = spin_matrices(rep);
  const double pn = p.norm();
  Eigen::Matrix4cd spin_along;
  if (pn > 0.0) {
    const Eigen::Vector3d ph = p / pn;
    spin_along = ph[0] * spin[0] + ph[1] * spin[1] + ph[2] * spin[2];
  } else {
    spin_along = spin[2];  // p = 0: label by the spin projection along e3
  }

  // eigenvalues come sorted ascending: columns 0,1 span energy -E, columns 2,3
  // span +E; resolve each two-fold degeneracy by the spin projection
  auto split = [&](int first_col, std::array<Eigen::Vector4cd, 2>& out) {
    const Eigen::Matrix<cplx, 4, 2> w = es.eigenvectors().block<4, 2>(0, first_col);
    Eigen::Matrix2cd b = w.adjoint() * spin_along * w;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es2(b);
    // ascending: column 0 is spin -1/2, column 1 is spin +1/2
    out[0] = (w * es2.eigenvectors().col(1)).normalized();
    out[1] = (w * es2.eigenvectors().col(0)).normalized();
    detail::fix_phase(out[0]);
    detail::fix_phase(out[1]);
  };

  SpinorNode node;
  node.energy = energy;
  split(2, node.u);
  split(0, node.v);
  return node;
}

struct SpinorBasis {
  double mass = 0.0;
  DiracRep rep;
  std::vector<SpinorNode> node;
};

inline SpinorBasis solve_spinor_basis(const MomentumGrid& grid, double mass,
                                      const DiracRep& rep = dirac_representation()) {
  validate_representation(rep);
  SpinorBasis basis;
  basis.mass = mass;
  basis.rep = rep;
  basis.node.reserve(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    basis.node.push_back(solve_spinor_node(grid.nodes[i], mass, rep));
  return basis;
}

// Cutoff-weighted momentum profiles of the field operator, one complex number
// per (spinor component, spin, momentum node).  The antiparticle profile g is
// sampled through the grid involution: g uses v evaluated at -p.
struct DiracFields {
  FermionBasis basis;
  MomentumGrid grid;
  std::array<std::array<std::vector<cplx>, 2>, 4> f, g;  // [component][spin][node]
  std::vector<double> node_energy;                       // per momentum node
  std::vector<double> mode_energy;                       // per fermion mode
};

inline DiracFields make_dirac_fields(const MomentumGrid& grid, const SpinorBasis& spinors,
                                     const std::vector<cplx>& chi_dirac) {
  require(static_cast<int>(chi_dirac.size()) == grid.size(),
          "dirac fields: cutoff sample count does not match grid");
  DiracFields df;
  df.basis = make_fermion_basis(4 * grid.size());
  df.grid = grid;
  df.node_energy.resize(grid.size());
  df.mode_energy.resize(4 * grid.size());
  for (int l = 0; l < 4; ++l)
    for (int s = 0; s < 2; ++s) {
      df.f[l][s].resize(grid.size());
      df.g[l][s].resize(grid.size());
    }
  for (int i = 0; i < grid.size(); ++i) {
    const SpinorNode& n = spinors.node[i];
    const SpinorNode& n_neg = spinors.node[grid.negation[i]];
    df.node_energy[i] = n.energy;
    for (int sp = 0; sp < 4; ++sp) df.mode_energy[4 * i + sp] = n.energy;
    const double denom = std::sqrt(two_pi_cubed * n.energy);
    for (int l = 0; l < 4; ++l)
      for (int s = 0; s < 2; ++s) {
        df.f[l][s][i] = chi_dirac[i] * n.u[s](l) / denom;
        df.g[l][s][i] = chi_dirac[i] * n_neg.v[s](l) / denom;
      }
  }
  return df;
}

inline SparseOperator build_H_dirac(const DiracFields& df) {
  return second_quantize(df.basis, df.mode_energy);
}

// psi_l(x) = sum_s b_s(f_l e^{-ipx}) + d*_s(g_l e^{-ipx}); the smearing
// coefficients absorb sqrt(w_i) so operator norms match weighted grid norms
inline std::array<SparseOperator, 4> build_psi(const DiracFields& df, const Eigen::Vector3d& x) {
  const cplx mi(0.0, -1.0);
  std::array<SparseOperator, 4> psi{
      zero_operator(df.basis.label(), df.basis.dim()),
      zero_operator(df.basis.label(), df.basis.dim()),
      zero_operator(df.basis.label(), df.basis.dim()),
      zero_operator(df.basis.label(), df.basis.dim()),
  };
  std::vector<cplx> phase(df.grid.size());
  for (int i = 0; i < df.grid.size(); ++i)
    phase[i] = std::sqrt(df.grid.weights[i]) * std::exp(mi * df.grid.nodes[i].dot(x));
  const std::array<FermionSpecies, 2> particle{FermionSpecies::b_up, FermionSpecies::b_dn};
  const std::array<FermionSpecies, 2> antiparticle{FermionSpecies::d_up, FermionSpecies::d_dn};
  std::vector<cplx> coeff(df.grid.size());
  for (int l = 0; l < 4; ++l)
    for (int s = 0; s < 2; ++s) {
      for (int i = 0; i < df.grid.size(); ++i) coeff[i] = phase[i] * df.f[l][s][i];
      psi[l] = psi[l] + smeared_ladder(df.basis, Ladder::annihilate, particle[s], coeff);
      for (int i = 0; i < df.grid.size(); ++i) coeff[i] = phase[i] * df.g[l][s][i];
      psi[l] = psi[l] + smeared_ladder(df.basis, Ladder::create, antiparticle[s], coeff);
    }
  return psi;
}

struct CurrentSet {
  SparseOperator rho;                    // charge density psi* psi
  std::array<SparseOperator, 3> current; // alpha-weighted bilinears psi* alpha psi
};

inline CurrentSet build_current_density(const DiracFields& df, const DiracRep& rep,
                                        const Eigen::Vector3d& x) {
  const auto psi = build_psi(df, x);
  CurrentSet out{zero_operator(df.basis.label(), df.basis.dim()),
                 {zero_operator(df.basis.label(), df.basis.dim()),
                  zero_operator(df.basis.label(), df.basis.dim()),
                  zero_operator(df.basis.label(), df.basis.dim())}};
  std::array<SparseOperator, 4> psi_dag{psi[0].adjoint(), psi[1].adjoint(), psi[2].adjoint(),
                                        psi[3].adjoint()};
  for (int l = 0; l < 4; ++l) out.rho = out.rho + psi_dag[l] * psi[l];
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 4; ++l)
      for (int lp = 0; lp < 4; ++lp) {
        const cplx a = rep.alpha[j](l, lp);
        if (a != cplx(0.0, 0.0)) out.current[j] = out.current[j] + a * (psi_dag[l] * psi[lp]);
      }
  mark_hermitian(out.rho, 1e-13);
  for (int j = 0; j < 3; ++j) mark_hermitian(out.current[j], 1e-13);
  return out;
}

// Norm constants of the fermionic layer: per-component field norms M_D, and
// commutator constants for the free energy and for density pairs against the
// current components.
struct DiracBounds {
  std::array<double, 4> M_D{};  // ||psi_l(x)|| <= M_D[l], uniformly in x
  std::array<double, 3> c{};    // ||[H_dirac, J_j(x)]|| <= c[j]
  std::array<double, 3> d{};    // ||[rho(x)rho(y), J_j(z)]|| <= d[j]
};

inline DiracBounds dirac_bound_constants(const DiracFields& df, const DiracRep& rep) {
  DiracBounds b;
  for (int l = 0; l < 4; ++l) {
    double m = 0.0;
    for (int s = 0; s < 2; ++s)
      m += grid_norm(df.grid, df.f[l][s]) + grid_norm(df.grid, df.g[l][s]);
    b.M_D[l] = m;
  }
  // energy-weighted profile norms ||E f_l||, ||E g_l||
  std::array<double, 4> energy_norm{};
  for (int l = 0; l < 4; ++l) {
    double m = 0.0;
    for (int s = 0; s < 2; ++s) {
      double nf = 0.0, ng = 0.0;
      for (int i = 0; i < df.grid.size(); ++i) {
        const double e2 = df.node_energy[i] * df.node_energy[i];
        nf += df.grid.weights[i] * e2 * std::norm(df.f[l][s][i]);
        ng += df.grid.weights[i] * e2 * std::norm(df.g[l][s][i]);
      }
      m += std::sqrt(nf) + std::sqrt(ng);
    }
    energy_norm[l] = m;
  }
  double m2_sum = 0.0;
  for (int l = 0; l < 4; ++l) m2_sum += b.M_D[l] * b.M_D[l];
  for (int j = 0; j < 3; ++j) {
    double cj = 0.0, dj = 0.0;
    for (int l = 0; l < 4; ++l)
      for (int lp = 0; lp < 4; ++lp) {
        const double a = std::abs(rep.alpha[j](l, lp));
        if (a == 0.0) continue;
        cj += a * energy_norm[l];
        dj += a * b.M_D[l] * b.M_D[lp];
      }
    b.c[j] = 2.0 * cj;
    b.d[j] = 4.0 * m2_sum * m2_sum * dj;
  }
  return b;
}

}  // namespace focklimit
