#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <focklimit/model.hpp>
#include <focklimit/suites.hpp>

#include "test_helpers.hpp"

using namespace focklimit;

TEST_CASE("regularized Coulomb kernel", "[assembly]") {
  REQUIRE(coulomb_kernel({0.0, 0.0, 2.0}, 1.0) == Catch::Approx(0.5));
  REQUIRE(coulomb_kernel({0.0, 0.0, 0.0}, 1.0) == Catch::Approx(2.0));  // capped at 2/h
  REQUIRE(coulomb_kernel({0.3, 0.0, 0.0}, 1.0) == Catch::Approx(2.0));
  REQUIRE(coulomb_kernel({0.0, 3.0, 4.0}, 1.0) == Catch::Approx(0.2));
}

TEST_CASE("model assembly on the occupation-1 configuration", "[assembly]") {
  const auto cfg = mini_config();
  const auto m = Model::build(cfg);

  REQUIRE(m.fdim == 16);
  REQUIRE(m.bdim == 16);
  REQUIRE(m.dim == 256);

  SECTION("every assembled operator is Hermitian where promised") {
    for (const auto* op : {&m.H_dirac, &m.H_rad, &m.H_int, &m.T_gen, &m.H_coul, &m.V_eff,
                           &m.H_eff, &m.K_limit}) {
      REQUIRE(op->hermitian);
      REQUIRE(hermiticity_defect(*op) < 1e-12);
    }
  }

  SECTION("scaled Hamiltonian is the pinned linear combination") {
    const double lambda = 3.0;
    const double e = cfg.coupling;
    const auto direct = m.H_dirac_full + (lambda * lambda) * m.H_rad_full +
                        (e * lambda) * m.H_int +
                        (e * e / (8.0 * pi_const)) * m.H_coul_full;
    REQUIRE(max_abs_entry(m.scaled_hamiltonian(lambda) - direct) < 1e-14);
    REQUIRE_THROWS_AS(m.scaled_hamiltonian(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(m.scaled_hamiltonian(-1.0), std::invalid_argument);
  }

  SECTION("effective Hamiltonian combines its three parts") {
    const double e = cfg.coupling;
    const auto direct =
        m.H_dirac + (e * e / (8.0 * pi_const)) * m.H_coul + (-e * e / 4.0) * m.V_eff;
    REQUIRE(max_abs_entry(m.H_eff - direct) < 1e-14);
  }

  SECTION("coupling term annihilates the joint vacuum expectation") {
    REQUIRE(std::abs(dense(m.H_int)(0, 0)) == 0.0);
    REQUIRE(std::abs(dense(m.T_gen)(0, 0)) == 0.0);
  }

  SECTION("charge density is diagonal for a rest-frame fermion node") {
    for (const auto& cur : m.currents) {
      DenseMat rho = dense(cur.rho);
      rho.diagonal().setZero();
      REQUIRE(rho.cwiseAbs().maxCoeff() == 0.0);
    }
    // hence so is the two-site Coulomb term
    DenseMat hc = dense(m.H_coul);
    hc.diagonal().setZero();
    REQUIRE(hc.cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("limit generator matches its commutator definition") {
    const double e = cfg.coupling;
    const auto direct = cplx(0.0, -0.5 * e * e) * commutator(m.T_gen, m.H_int);
    REQUIRE(max_abs_entry(m.K_limit - direct) < 1e-14);
  }

  SECTION("bound constants on the two-site spatial grid") {
    // k_C = 2 on-site (spacing 1) and 1 across the two sites at distance 1
    REQUIRE(m.cbounds.M_II == Catch::Approx(6.0));
    REQUIRE(m.cbounds.L_I > 0.0);
    REQUIRE(m.cbounds.R_I > 0.0);
    // unit weights, flat cutoffs
    REQUIRE(m.cuts.spa_l1 == Catch::Approx(2.0));
  }
}

TEST_CASE("coupling switched off", "[assembly]") {
  auto cfg = mini_config();
  cfg.coupling = 0.0;
  const auto m = Model::build(cfg);

  REQUIRE(max_abs_entry(m.K_limit) == 0.0);
  // H(lambda) collapses to the free parts
  const auto h = m.scaled_hamiltonian(2.0);
  const auto free = m.H_dirac_full + 4.0 * m.H_rad_full;
  REQUIRE(max_abs_entry(h - free) == 0.0);
  // and the effective Hamiltonian to the plain fermion part
  REQUIRE(max_abs_entry(m.H_eff - m.H_dirac) == 0.0);
}

TEST_CASE("identity suite passes at occupation cap 1", "[assembly]") {
  const auto m = Model::build(mini_config());
  const auto report = identity_suite(m);

  // the double-creator check needs cap >= 2 and is skipped here
  REQUIRE(report.checks.size() == 11);
  for (const auto& c : report.checks) {
    INFO(c.name << " deviation " << c.deviation << " tol " << c.tolerance);
    REQUIRE(c.pass);
    REQUIRE(c.name != "conjugate_field_self_commutator");
  }
  REQUIRE(report.all_pass());

  bool has_compression = false;
  for (const auto& c : report.checks)
    has_compression |= c.name == "vacuum_compression_matches_effective_potential";
  REQUIRE(has_compression);
}

TEST_CASE("bound suite passes at occupation cap 1", "[assembly]") {
  const auto m = Model::build(mini_config());
  const auto report = bound_suite(m, 12345);
  REQUIRE(report.checks.size() == 11);
  for (const auto& c : report.checks) {
    INFO(c.name << " deviation " << c.deviation << " tol " << c.tolerance);
    REQUIRE(c.pass);
  }
  REQUIRE(report.all_pass());
}
