#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <focklimit/kernels.hpp>
#include <focklimit/rng.hpp>

using namespace focklimit;

namespace {

MomentumGrid desk_grid() {
  GridSpec spec;
  spec.nodes = {{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
  spec.weights = {1.0, 1.0};
  return build_momentum_grid(spec, GridRole::photon);
}

}  // namespace

TEST_CASE("Gauss-Legendre rule", "[kernels]") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  REQUIRE(x.size() == 5);

  double wsum = 0.0;
  for (int i = 0; i < 5; ++i) {
    REQUIRE(x[i] > -1.0);
    REQUIRE(x[i] < 1.0);
    REQUIRE(w[i] > 0.0);
    REQUIRE(x[i] == Catch::Approx(-x[4 - i]).margin(1e-15));
    wsum += w[i];
  }
  REQUIRE(wsum == Catch::Approx(2.0).epsilon(1e-14));

  // five nodes integrate polynomials through degree nine exactly
  auto integrate = [&](int deg) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += w[i] * std::pow(x[i], deg);
    return s;
  };
  REQUIRE(integrate(8) == Catch::Approx(2.0 / 9.0).epsilon(1e-13));
  REQUIRE(integrate(9) == Catch::Approx(0.0).margin(1e-14));
  REQUIRE(std::abs(integrate(10) - 2.0 / 11.0) > 1e-4);  // and not beyond

  gauss_legendre(64, x, w);
  double total = 0.0;
  for (double v : w) total += v;
  REQUIRE(total == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("angular product rule resolves the unit sphere", "[kernels]") {
  const auto rule = detail::angular_rule(86);
  REQUIRE(rule.dirs.size() == 90);  // 6 cos(theta) nodes x 15 phi nodes

  double area = 0.0;
  Eigen::Vector3d first_moment = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second_moment = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < rule.dirs.size(); ++i) {
    REQUIRE(std::abs(rule.dirs[i].norm() - 1.0) < 1e-14);
    area += rule.weights[i];
    first_moment += rule.weights[i] * rule.dirs[i];
    second_moment += rule.weights[i] * rule.dirs[i] * rule.dirs[i].transpose();
  }
  REQUIRE(area == Catch::Approx(4.0 * pi_const).epsilon(1e-13));
  REQUIRE(first_moment.norm() < 1e-13);
  // int n n^T dOmega = (4pi/3) I
  REQUIRE((second_moment - (4.0 * pi_const / 3.0) * Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("discrete kernel on the two-node grid", "[kernels]") {
  const auto grid = desk_grid();
  const std::vector<cplx> chi(2, cplx(1.0, 0.0));

  const auto k0 = lambda_discrete({0.0, 0.0, 0.0}, grid, chi);
  REQUIRE(k0.provenance == KernelProvenance::discrete_mode_sum);
  // transverse projector at k = +-e3 keeps x and y, kills z
  REQUIRE(k0.entries(0, 0) == cplx(2.0 / two_pi_cubed, 0.0));
  REQUIRE(k0.entries(1, 1) == cplx(2.0 / two_pi_cubed, 0.0));
  REQUIRE(std::abs(k0.entries(2, 2)) == 0.0);
  REQUIRE(std::abs(k0.entries(0, 1)) == 0.0);
  REQUIRE(std::abs(k0.entries(0, 2)) == 0.0);

  const Eigen::Vector3d ez(0.0, 0.0, 1.0);
  const auto kz = lambda_discrete(ez, grid, chi);
  REQUIRE(kz.entries(0, 0).real() == Catch::Approx(2.0 * std::cos(1.0) / two_pi_cubed));
  REQUIRE(kz.entries(0, 0).imag() == Catch::Approx(0.0).margin(1e-18));

  // symmetric grids make the kernel real, even in z, and symmetric in (j,l)
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Vector3d z = rng.vec3(-2.0, 2.0);
    const auto kp = lambda_discrete(z, grid, chi);
    const auto km = lambda_discrete(-z, grid, chi);
    REQUIRE((kp.entries - km.entries).cwiseAbs().maxCoeff() < 1e-17);
    REQUIRE((kp.entries - kp.entries.transpose()).cwiseAbs().maxCoeff() < 1e-17);
    REQUIRE(kp.entries.imag().cwiseAbs().maxCoeff() < 1e-17);

    // the even combination used by the effective potential
    const auto d = delta_discrete(z, grid, chi);
    REQUIRE((d - kp.entries - km.entries).cwiseAbs().maxCoeff() < 1e-17);
  }
}

TEST_CASE("uniform bound majorizes the kernel", "[kernels]") {
  const auto grid = desk_grid();
  const std::vector<cplx> chi(2, cplx(1.0, 0.0));
  const auto gamma = gamma_bound(grid, chi);
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = lambda_discrete(rng.vec3(-3.0, 3.0), grid, chi);
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) REQUIRE(std::abs(k.entries(j, l)) <= gamma(j, l) + 1e-15);
  }
}

TEST_CASE("continuum quadrature reproduces the sharp-cutoff value", "[kernels]") {
  const double K = 1.7;  // cutoff radius
  CutoffProfile sharp{CutoffProfile::Kind::sharp_ball, K, 1.0};

  const auto k0 = lambda_quadrature({0.0, 0.0, 0.0}, sharp);
  REQUIRE(k0.provenance == KernelProvenance::continuum_quadrature);

  // angular integral of the transverse projector is (8pi/3) delta_jl, the
  // radial r^2 cancels 1/k^2, so lambda_jj(0) = K / (3 pi^2)
  const double analytic = K / (3.0 * pi_const * pi_const);
  for (int j = 0; j < 3; ++j)
    REQUIRE(k0.entries(j, j).real() == Catch::Approx(analytic).epsilon(1e-12));
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l)
      if (j != l) REQUIRE(std::abs(k0.entries(j, l)) < 1e-10);
}

TEST_CASE("quadrature is stable under refinement", "[kernels]") {
  CutoffProfile gauss{CutoffProfile::Kind::gaussian, 1.0, 0.8};

  // closed form at z = 0: radial integral of exp(-2 r^2 / w^2)
  const double w = 0.8;
  const double radial = 0.5 * std::sqrt(pi_const / 2.0) * w;
  const double analytic = radial * (8.0 * pi_const / 3.0) / two_pi_cubed;
  const auto k0 = lambda_quadrature({0.0, 0.0, 0.0}, gauss);
  for (int j = 0; j < 3; ++j)
    REQUIRE(k0.entries(j, j).real() == Catch::Approx(analytic).epsilon(1e-12));

  const Eigen::Vector3d z(0.4, -0.3, 1.1);
  const auto base = lambda_quadrature(z, gauss);
  const auto fine = lambda_quadrature(z, gauss, QuadSpec{96, 160});
  REQUIRE((base.entries - fine.entries).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("flat profiles have no continuum kernel", "[kernels]") {
  CutoffProfile flat;  // kind "one"
  REQUIRE_THROWS_AS(lambda_quadrature({0.0, 0.0, 0.0}, flat), std::domain_error);
}
