#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include <focklimit/fock.hpp>
#include <focklimit/rng.hpp>

using namespace focklimit;

namespace {

// Kronecker product on dense matrices, first factor most significant — the
// independent route to the string-sign fermion ladders.
DenseMat kron(const DenseMat& a, const DenseMat& b) {
  DenseMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseMat string_ladder(int n_modes, int mode) {
  const DenseMat a2 = (DenseMat(2, 2) << 0, 1, 0, 0).finished();  // lowering on one bit
  const DenseMat z2 = (DenseMat(2, 2) << 1, 0, 0, -1).finished();
  const DenseMat i2 = DenseMat::Identity(2, 2);
  DenseMat m = DenseMat::Identity(1, 1);
  for (int k = n_modes - 1; k >= 0; --k)  // mode 0 is the least significant bit
    m = kron(m, k == mode ? a2 : (k < mode ? z2 : i2));
  return m;
}

}  // namespace

TEST_CASE("fermion ladders match the string-sign construction", "[fock]") {
  const auto basis = make_fermion_basis(4);
  for (int mode = 0; mode < 4; ++mode) {
    const auto c = fermion_ladder(basis, Ladder::annihilate, mode);
    REQUIRE((dense(c) - string_ladder(4, mode)).cwiseAbs().maxCoeff() == 0.0);
    // creation is exactly the transpose (real entries)
    const auto cd = fermion_ladder(basis, Ladder::create, mode);
    REQUIRE((dense(cd) - dense(c).transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  // hand oracle at two modes: c_1 |11> = -|01>, the sign from the occupied mode below
  const auto b2 = make_fermion_basis(2);
  const auto c1 = fermion_ladder(b2, Ladder::annihilate, 1);
  const DenseMat m = dense(c1);
  REQUIRE(m(1, 3) == cplx(-1.0, 0.0));
  REQUIRE(m(0, 2) == cplx(1.0, 0.0));  // c_1 |10> = |00>
  REQUIRE(m.cwiseAbs().sum() == 2.0);  // nothing else
}

TEST_CASE("canonical anticommutation relations hold exactly", "[fock]") {
  const auto basis = make_fermion_basis(5);
  std::vector<SparseOperator> c, cd;
  for (int m = 0; m < 5; ++m) {
    c.push_back(fermion_ladder(basis, Ladder::annihilate, m));
    cd.push_back(fermion_ladder(basis, Ladder::create, m));
  }
  const auto id = identity_operator(basis.label(), basis.dim());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      REQUIRE(max_abs_entry(anticommutator(c[i], c[j])) == 0.0);
      auto mixed = anticommutator(c[i], cd[j]);
      if (i == j) mixed = mixed - id;
      REQUIRE(max_abs_entry(mixed) == 0.0);
    }
}

TEST_CASE("boson ladder oracle at one mode", "[fock]") {
  const auto basis = make_boson_basis(1, 2);
  REQUIRE(basis.dim() == 3);
  const auto a = boson_ladder(basis, Ladder::annihilate, 0);
  const auto ad = boson_ladder(basis, Ladder::create, 0);

  DenseMat expect = DenseMat::Zero(3, 3);
  expect(0, 1) = 1.0;
  expect(1, 2) = std::sqrt(2.0);
  REQUIRE((dense(a) - expect).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((dense(ad) - expect.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // the truncation shows up only in the top rung of [a, a+]; the middle rung
  // carries sqrt(2)^2 - 1, one rounding step away from 1
  const DenseMat comm = dense(commutator(a, ad));
  REQUIRE(std::abs(comm(0, 0) - cplx(1.0, 0.0)) == 0.0);
  REQUIRE(std::abs(comm(1, 1) - cplx(1.0, 0.0)) < 1e-15);
  REQUIRE(std::abs(comm(2, 2) - cplx(-2.0, 0.0)) < 1e-15);  // 1 - (n_max + 1)
}

TEST_CASE("truncated commutation relations across modes", "[fock]") {
  const int n_max = 2;
  const auto basis = make_boson_basis(3, n_max);
  std::vector<SparseOperator> a, ad;
  for (int m = 0; m < 3; ++m) {
    a.push_back(boson_ladder(basis, Ladder::annihilate, m));
    ad.push_back(boson_ladder(basis, Ladder::create, m));
  }
  const auto id = identity_operator(basis.label(), basis.dim());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // annihilator and creator pairs commute exactly, truncated or not
      REQUIRE(max_abs_entry(commutator(a[i], a[j])) == 0.0);
      REQUIRE(max_abs_entry(commutator(ad[i], ad[j])) == 0.0);
      if (i == j) continue;
      REQUIRE(max_abs_entry(commutator(a[i], ad[j])) == 0.0);
    }
  // the diagonal defect is -(n_max + 1) times the top-rung projector, up to
  // the rounding of sqrt(n)^2 - n on the inner rungs
  for (int i = 0; i < 3; ++i) {
    DenseMat defect = dense(commutator(a[i], ad[i])) - dense(id);
    for (Index s = 0; s < basis.dim(); ++s) {
      const double want = basis.occupation(s, i) == n_max ? -3.0 : 0.0;
      REQUIRE(std::abs(defect(s, s).real() - want) < 1e-15);
      REQUIRE(defect(s, s).imag() == 0.0);
      defect(s, s) = 0.0;
    }
    REQUIRE(defect.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("mixed-radix occupation bookkeeping", "[fock]") {
  const auto basis = make_boson_basis(2, 2);  // radix 3, mode 0 least significant
  REQUIRE(basis.dim() == 9);
  REQUIRE(basis.stride(0) == 1);
  REQUIRE(basis.stride(1) == 3);
  REQUIRE(basis.occupation(5, 0) == 2);  // 5 = 2 + 1*3
  REQUIRE(basis.occupation(5, 1) == 1);
  REQUIRE(basis.occupation(8, 0) == 2);
  REQUIRE(basis.occupation(8, 1) == 2);
}

TEST_CASE("second quantization of diagonal energies", "[fock]") {
  SECTION("fermion") {
    const auto basis = make_fermion_basis(2);
    const auto n = second_quantize(basis, {1.0, 2.0});
    const DenseMat d = dense(n);
    REQUIRE(d(0, 0) == cplx(0.0, 0.0));
    REQUIRE(d(1, 1) == cplx(1.0, 0.0));
    REQUIRE(d(2, 2) == cplx(2.0, 0.0));
    REQUIRE(d(3, 3) == cplx(3.0, 0.0));
    REQUIRE(n.hermitian);
    REQUIRE_THROWS_AS(second_quantize(basis, {1.0, -2.0}), std::invalid_argument);
  }

  SECTION("boson ladder shifts the energy by one quantum") {
    const auto basis = make_boson_basis(2, 3);
    const auto h = second_quantize(basis, {1.0, 0.5});
    for (int m = 0; m < 2; ++m) {
      const auto ad = boson_ladder(basis, Ladder::create, m);
      const double w = (m == 0) ? 1.0 : 0.5;
      // [dGamma(w), a+_m] = w a+_m, exact even at the truncation edge
      auto lhs = commutator(h, ad);
      auto rhs = w * ad;
      REQUIRE(max_abs_entry(lhs - rhs) < 1e-14);
    }
  }
}

TEST_CASE("smeared ladders", "[fock]") {
  Rng rng(17);
  const auto basis = make_boson_basis(4, 2);  // two photon nodes, two polarizations
  const std::vector<cplx> f = {rng.complex_normal(), rng.complex_normal()};

  const auto a_f = smeared_ladder(basis, Ladder::annihilate, 1, f);
  const auto ad_f = smeared_ladder(basis, Ladder::create, 1, f);

  // a(f)+ = a+(f) with the same coefficient vector
  REQUIRE(max_abs_entry(ad_f - a_f.adjoint()) == 0.0);

  // the annihilator is antilinear in its smearing function
  const cplx s(0.3, -1.2);
  std::vector<cplx> sf = f;
  for (auto& v : sf) v *= s;
  const auto a_sf = smeared_ladder(basis, Ladder::annihilate, 1, sf);
  REQUIRE(max_abs_entry(a_sf - std::conj(s) * a_f) < 1e-14);
  const auto ad_sf = smeared_ladder(basis, Ladder::create, 1, sf);
  REQUIRE(max_abs_entry(ad_sf - s * ad_f) < 1e-14);

  // polarization tags map to interleaved modes: smearing polarization 1 only
  // touches even modes
  const auto a_even = smeared_ladder(basis, Ladder::annihilate, 1, {cplx(1.0), cplx(0.0)});
  const auto direct = boson_ladder(basis, Ladder::annihilate, 0);
  REQUIRE(max_abs_entry(a_even - direct) == 0.0);

  const auto fb = make_fermion_basis(8);
  const std::vector<cplx> g = {rng.complex_normal(), rng.complex_normal()};
  const auto b_g = smeared_ladder(fb, Ladder::annihilate, FermionSpecies::b_dn, g);
  REQUIRE(max_abs_entry(b_g.adjoint() -
                        smeared_ladder(fb, Ladder::create, FermionSpecies::b_dn, g)) == 0.0);
  // species offsets: b_dn lives on modes 1 and 5
  const auto c1 = fermion_ladder(fb, Ladder::annihilate, 1);
  const auto c5 = fermion_ladder(fb, Ladder::annihilate, 5);
  REQUIRE(max_abs_entry(b_g - (std::conj(g[0]) * c1 + std::conj(g[1]) * c5)) == 0.0);
}

TEST_CASE("tensor products and projectors", "[fock]") {
  const auto fb = make_fermion_basis(2);
  const auto bb = make_boson_basis(1, 2);
  Rng rng(23);

  const auto cf = fermion_ladder(fb, Ladder::annihilate, 0);
  const auto ab = boson_ladder(bb, Ladder::annihilate, 0);
  const auto op = tensor_product(cf, ab);
  REQUIRE(op.domain == product_label(fb.label(), bb.label()));

  // (A x B)(u x v) = (A u) x (B v), fermion index major
  const Vec u = rng.state(fb.dim());
  const Vec v = rng.state(bb.dim());
  const Vec lhs = op.mat * tensor_product(u, v);
  const Vec rhs = tensor_product(Vec(cf.mat * u), Vec(ab.mat * v));
  REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);

  const auto pvac = vacuum_projector(bb);
  REQUIRE(dense(pvac)(0, 0) == cplx(1.0, 0.0));
  REQUIRE(max_abs_entry(pvac * pvac - pvac) == 0.0);
  REQUIRE(dense(pvac).cwiseAbs().sum() == 1.0);

  const auto cap = occupation_cap_projector(make_boson_basis(2, 2), 1);
  const DenseMat d = dense(cap);
  int kept = 0;
  for (Index s = 0; s < 9; ++s) kept += d(s, s).real() == 1.0 ? 1 : 0;
  REQUIRE(kept == 4);  // occupations {0,1} x {0,1}
  REQUIRE(max_abs_entry(cap * cap - cap) == 0.0);
}

TEST_CASE("label discipline on mismatched spaces", "[fock]") {
  const auto f2 = make_fermion_basis(2);
  const auto f3 = make_fermion_basis(3);
  const auto a = fermion_ladder(f2, Ladder::annihilate, 0);
  const auto b = fermion_ladder(f3, Ladder::annihilate, 0);
  REQUIRE_THROWS_AS(a + b, std::invalid_argument);
  REQUIRE_THROWS_AS(a * b, std::invalid_argument);
  REQUIRE_THROWS_AS(commutator(a, b), std::invalid_argument);
}
