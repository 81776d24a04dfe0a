#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <focklimit/grids.hpp>

using namespace focklimit;

TEST_CASE("box nodes are centered lattices", "[grids]") {
  // 2x2x2 with unit spacing: the eight corners of a unit cube around 0
  const auto nodes = box_nodes({2, 2, 2}, 1.0);
  REQUIRE(nodes.size() == 8);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const auto& n : nodes) {
    sum += n;
    for (int c = 0; c < 3; ++c) REQUIRE(std::abs(n[c]) == Catch::Approx(0.5));
  }
  REQUIRE(sum.norm() == 0.0);  // exactly centered by construction

  // odd shapes put a node on the origin
  const auto line = box_nodes({3, 1, 1}, 0.5);
  REQUIRE(line.size() == 3);
  REQUIRE(line[1].norm() == 0.0);
  REQUIRE(line[0] == Eigen::Vector3d(-0.5, 0.0, 0.0));
  REQUIRE(line[2] == Eigen::Vector3d(0.5, 0.0, 0.0));
}

TEST_CASE("momentum grids close under negation", "[grids]") {
  GridSpec spec;
  spec.nodes = {{0, 0, 1}, {0, 0, -1}, {1, 2, 3}, {-1, -2, -3}};
  spec.weights = {0.5, 0.5, 2.0, 2.0};
  const auto g = build_momentum_grid(spec, GridRole::photon);
  REQUIRE(g.size() == 4);
  for (int i = 0; i < g.size(); ++i) {
    const int j = g.negation[i];
    REQUIRE(g.nodes[j] == -g.nodes[i]);
    REQUIRE(g.weights[j] == g.weights[i]);
    REQUIRE(g.negation[j] == i);  // involution
  }
}

TEST_CASE("momentum grid validation", "[grids]") {
  GridSpec spec;

  SECTION("photon grid rejects a zero node") {
    spec.nodes = {{0, 0, 0}};
    spec.weights = {1.0};
    REQUIRE_THROWS_AS(build_momentum_grid(spec, GridRole::photon), std::invalid_argument);
    // the fermion field has no infrared problem at p = 0
    REQUIRE_NOTHROW(build_momentum_grid(spec, GridRole::fermion));
  }

  SECTION("asymmetric node sets are rejected") {
    spec.nodes = {{0, 0, 1}, {0, 0, 2}};
    spec.weights = {1.0, 1.0};
    REQUIRE_THROWS_AS(build_momentum_grid(spec, GridRole::photon), std::invalid_argument);
  }

  SECTION("negation partners must carry equal weights") {
    spec.nodes = {{0, 0, 1}, {0, 0, -1}};
    spec.weights = {1.0, 1.5};
    REQUIRE_THROWS_AS(build_momentum_grid(spec, GridRole::photon), std::invalid_argument);
  }

  SECTION("weights must be positive") {
    spec.nodes = {{0, 0, 1}, {0, 0, -1}};
    spec.weights = {1.0, -1.0};
    REQUIRE_THROWS_AS(build_momentum_grid(spec, GridRole::photon), std::invalid_argument);
  }

  SECTION("node/weight count mismatch") {
    spec.nodes = {{0, 0, 1}, {0, 0, -1}};
    spec.weights = {1.0};
    REQUIRE_THROWS_AS(build_momentum_grid(spec, GridRole::photon), std::invalid_argument);
  }
}

TEST_CASE("spatial grid spacing", "[grids]") {
  GridSpec spec;

  SECTION("minimal pairwise distance") {
    spec.nodes = {{0, 0, 0}, {0, 0, 1}, {0, 0, 3}};
    spec.weights = {1.0, 1.0, 1.0};
    const auto g = build_spatial_grid(spec);
    REQUIRE(g.min_spacing == Catch::Approx(1.0));
  }

  SECTION("a single site falls back to the cell size its weight implies") {
    spec.nodes = {{0, 0, 0}};
    spec.weights = {8.0};
    const auto g = build_spatial_grid(spec);
    REQUIRE(g.min_spacing == Catch::Approx(2.0));  // cbrt(8)
  }

  SECTION("duplicate sites are rejected") {
    spec.nodes = {{0, 0, 0}, {0, 0, 0}};
    spec.weights = {1.0, 1.0};
    REQUIRE_THROWS_AS(build_spatial_grid(spec), std::invalid_argument);
  }
}

TEST_CASE("cutoff profiles", "[grids]") {
  CutoffProfile one;  // default
  CutoffProfile sharp{CutoffProfile::Kind::sharp_ball, 2.0, 1.0};
  CutoffProfile gauss{CutoffProfile::Kind::gaussian, 1.0, 0.5};

  REQUIRE(one(0.0) == 1.0);
  REQUIRE(one(1e6) == 1.0);
  REQUIRE_FALSE(one.integrable_kernel());
  REQUIRE_THROWS_AS(one.support_radius(), std::domain_error);

  REQUIRE(sharp(1.9) == 1.0);
  REQUIRE(sharp(2.0) == 1.0);  // closed ball
  REQUIRE(sharp(2.1) == 0.0);
  REQUIRE(sharp.support_radius() == 2.0);

  REQUIRE(gauss(0.0) == 1.0);
  REQUIRE(gauss(0.5) == Catch::Approx(std::exp(-1.0)));
  REQUIRE(gauss.support_radius() == Catch::Approx(3.0));
  // numerically negligible past the declared support
  REQUIRE(gauss(gauss.support_radius()) < 1e-15);

  // vector overload goes through the norm
  REQUIRE(sharp(Eigen::Vector3d(0, 0, 1.5)) == 1.0);
  REQUIRE(sharp(Eigen::Vector3d(3, 0, 0)) == 0.0);
}

TEST_CASE("cutoff samples carry conjugate symmetry and weighted norms", "[grids]") {
  GridSpec fspec, pspec, sspec;
  fspec.nodes = {{0, 0, 0}};
  fspec.weights = {1.0};
  pspec.nodes = {{0, 0, 1}, {0, 0, -1}};
  pspec.weights = {0.25, 0.25};
  sspec.nodes = {{0, 0, 0}, {0, 0, 1}};
  sspec.weights = {1.0, 3.0};

  const auto fg = build_momentum_grid(fspec, GridRole::fermion);
  const auto pg = build_momentum_grid(pspec, GridRole::photon);
  const auto sg = build_spatial_grid(sspec);

  CutoffProfile sharp{CutoffProfile::Kind::sharp_ball, 1.0, 1.0};
  const auto s = sample_cutoffs(sharp, sharp, sharp, fg, pg, sg);

  REQUIRE(s.dirac.size() == 1);
  REQUIRE(s.rad.size() == 2);
  REQUIRE(s.spa.size() == 2);
  // sharp ball of radius 1 keeps every node here
  REQUIRE(s.rad_l1 == Catch::Approx(0.5));
  REQUIRE(s.rad_l2 == Catch::Approx(std::sqrt(0.5)));
  REQUIRE(s.spa_l1 == Catch::Approx(4.0));
  REQUIRE(s.spa_l2 == Catch::Approx(2.0));
}

TEST_CASE("weighted grid pairing", "[grids]") {
  GridSpec spec;
  spec.nodes = {{0, 0, 1}, {0, 0, -1}};
  spec.weights = {2.0, 2.0};
  const auto g = build_momentum_grid(spec, GridRole::photon);

  const std::vector<cplx> f = {cplx(1.0, 1.0), cplx(0.0, -1.0)};
  const std::vector<cplx> h = {cplx(2.0, 0.0), cplx(0.0, 1.0)};

  // sum_i w_i conj(f_i) h_i, antilinear in the first slot:
  // 2(1-i)2 + 2(i)(i) = 2 - 4i
  const cplx ip = grid_inner(g, f, h);
  REQUIRE(ip.real() == Catch::Approx(2.0));
  REQUIRE(ip.imag() == Catch::Approx(-4.0));
  REQUIRE(grid_norm(g, f) == Catch::Approx(std::sqrt(2.0 * 2.0 + 2.0 * 1.0)));
}
