#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "focklimit/sparse_operator.hpp"

namespace focklimit {

enum class Ladder { annihilate, create };

// ----------------------------------------------------------------------------
// fermion sector: occupation bitstrings, mode m <-> bit m of the state index
// ----------------------------------------------------------------------------

struct FermionBasis {
  int n_modes = 0;

  Index dim() const { return Index(1) << n_modes; }
  std::string label() const { return "fermion:" + std::to_string(n_modes); }
};

inline FermionBasis make_fermion_basis(int n_modes) {
  require(n_modes >= 1 && n_modes <= 24, "fermion basis: mode count out of range");
  return FermionBasis{n_modes};
}

// c_m clears bit m and picks up (-1)^(occupied modes below m); the creator is
// built from the same entries transposed, so adjoint consistency is exact.
inline SparseOperator fermion_ladder(const FermionBasis& basis, Ladder kind, int mode) {
  require(mode >= 0 && mode < basis.n_modes, "fermion ladder: mode out of range");
  const std::uint64_t dim = std::uint64_t(1) << basis.n_modes;
  const std::uint64_t bit = std::uint64_t(1) << mode;
  const std::uint64_t below = bit - 1;
  std::vector<Triplet> trips;
  trips.reserve(dim / 2);
  for (std::uint64_t s = 0; s < dim; ++s) {
    if (!(s & bit)) continue;
    const double sign = (std::popcount(s & below) & 1) ? -1.0 : 1.0;
    if (kind == Ladder::annihilate)
      trips.emplace_back(Index(s ^ bit), Index(s), sign);
    else
      trips.emplace_back(Index(s), Index(s ^ bit), sign);
  }
  return make_operator(basis.label(), Index(dim), basis.label(), Index(dim), trips);
}

// ----------------------------------------------------------------------------
// boson sector: per-mode occupation capped at n_max, mixed-radix state index
// with mode 0 least significant
// ----------------------------------------------------------------------------

struct BosonBasis {
  int n_modes = 0;
  int n_max = 0;

  Index dim() const {
    Index d = 1;
    for (int m = 0; m < n_modes; ++m) d *= n_max + 1;
    return d;
  }
  Index stride(int mode) const {
    Index s = 1;
    for (int m = 0; m < mode; ++m) s *= n_max + 1;
    return s;
  }
  int occupation(Index state, int mode) const {
    return static_cast<int>((state / stride(mode)) % (n_max + 1));
  }
  std::string label() const {
    return "boson:" + std::to_string(n_modes) + "/" + std::to_string(n_max);
  }
};

inline BosonBasis make_boson_basis(int n_modes, int n_max) {
  require(n_modes >= 1, "boson basis: need at least one mode");
  require(n_max >= 1, "boson basis: occupation cap must be at least 1");
  double d = 1.0;
  for (int m = 0; m < n_modes; ++m) d *= n_max + 1;
  require(d <= 2e7, "boson basis: dimension too large");
  return BosonBasis{n_modes, n_max};
}

// a|n> = sqrt(n)|n-1>; the creator is the exact transpose, so it annihilates
// the top rung instead of leaving the truncated space.
inline SparseOperator boson_ladder(const BosonBasis& basis, Ladder kind, int mode) {
  require(mode >= 0 && mode < basis.n_modes, "boson ladder: mode out of range");
  const Index dim = basis.dim();
  const Index stride = basis.stride(mode);
  const Index radix = basis.n_max + 1;
  std::vector<Triplet> trips;
  trips.reserve(dim - dim / radix);
  for (Index s = 0; s < dim; ++s) {
    const Index n = (s / stride) % radix;
    if (n == 0) continue;
    const double amp = std::sqrt(static_cast<double>(n));
    if (kind == Ladder::annihilate)
      trips.emplace_back(s - stride, s, amp);
    else
      trips.emplace_back(s, s - stride, amp);
  }
  return make_operator(basis.label(), dim, basis.label(), dim, trips);
}

// ----------------------------------------------------------------------------
// smeared ladders: annihilators are antilinear in the coefficient vector
// ----------------------------------------------------------------------------

// particle/antiparticle species per fermion momentum node, two spins each;
// fermion mode index = 4*node + species
enum class FermionSpecies { b_up = 0, b_dn = 1, d_up = 2, d_dn = 3 };

inline int fermion_mode(int node, FermionSpecies sp) { return 4 * node + static_cast<int>(sp); }

// photon mode index = 2*node + (polarization - 1)
inline int boson_mode(int node, int polarization) {
  return 2 * node + (polarization - 1);
}

namespace detail {

template <class Basis, class LadderFn>
SparseOperator smeared(const Basis& basis, Ladder kind, const std::vector<cplx>& coeffs,
                       const std::vector<int>& modes, LadderFn&& ladder) {
  require(coeffs.size() == modes.size(), "smeared ladder: coefficient/mode count mismatch");
  SparseOperator acc = zero_operator(basis.label(), basis.dim());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const cplx c = kind == Ladder::annihilate ? std::conj(coeffs[i]) : coeffs[i];
    if (c == cplx(0.0, 0.0)) continue;
    acc = acc + c * ladder(basis, kind, modes[i]);
  }
  return acc;
}

}  // namespace detail

// b_s(f) / d_s(f): one coefficient per momentum node of the chosen species
inline SparseOperator smeared_ladder(const FermionBasis& basis, Ladder kind, FermionSpecies sp,
                                     const std::vector<cplx>& coeffs) {
  require(static_cast<int>(coeffs.size()) * 4 == basis.n_modes,
          "smeared ladder: coefficient count does not match node count");
  std::vector<int> modes(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    modes[i] = fermion_mode(static_cast<int>(i), sp);
  return detail::smeared(basis, kind, coeffs, modes,
                         [](const FermionBasis& b, Ladder k, int m) { return fermion_ladder(b, k, m); });
}

// a_r(f): one coefficient per photon momentum node of the chosen polarization
inline SparseOperator smeared_ladder(const BosonBasis& basis, Ladder kind, int polarization,
                                     const std::vector<cplx>& coeffs) {
  require(polarization == 1 || polarization == 2, "smeared ladder: polarization must be 1 or 2");
  require(static_cast<int>(coeffs.size()) * 2 == basis.n_modes,
          "smeared ladder: coefficient count does not match node count");
  std::vector<int> modes(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    modes[i] = boson_mode(static_cast<int>(i), polarization);
  return detail::smeared(basis, kind, coeffs, modes,
                         [](const BosonBasis& b, Ladder k, int m) { return boson_ladder(b, k, m); });
}

// ----------------------------------------------------------------------------
// second quantization of diagonal one-particle energies
// ----------------------------------------------------------------------------

inline SparseOperator second_quantize(const FermionBasis& basis,
                                      const std::vector<double>& mode_energy) {
  require(static_cast<int>(mode_energy.size()) == basis.n_modes,
          "second_quantize: energy count does not match mode count");
  for (double e : mode_energy) require(e >= 0.0, "second_quantize: negative mode energy");
  const Index dim = basis.dim();
  std::vector<Triplet> trips;
  trips.reserve(dim);
  for (Index s = 0; s < dim; ++s) {
    double sum = 0.0;
    for (int m = 0; m < basis.n_modes; ++m)
      if (s & (Index(1) << m)) sum += mode_energy[m];
    if (sum != 0.0) trips.emplace_back(s, s, sum);
  }
  auto op = make_operator(basis.label(), dim, basis.label(), dim, trips);
  op.hermitian = true;
  return op;
}

inline SparseOperator second_quantize(const BosonBasis& basis,
                                      const std::vector<double>& mode_energy) {
  require(static_cast<int>(mode_energy.size()) == basis.n_modes,
          "second_quantize: energy count does not match mode count");
  for (double e : mode_energy) require(e >= 0.0, "second_quantize: negative mode energy");
  const Index dim = basis.dim();
  std::vector<Triplet> trips;
  trips.reserve(dim);
  for (Index s = 0; s < dim; ++s) {
    double sum = 0.0;
    for (int m = 0; m < basis.n_modes; ++m) sum += basis.occupation(s, m) * mode_energy[m];
    if (sum != 0.0) trips.emplace_back(s, s, sum);
  }
  auto op = make_operator(basis.label(), dim, basis.label(), dim, trips);
  op.hermitian = true;
  return op;
}

// ----------------------------------------------------------------------------
// product space: fermion index major, state = f * dim_boson + b
// ----------------------------------------------------------------------------

inline std::string product_label(const std::string& fermion, const std::string& boson) {
  return "(" + fermion + ")x(" + boson + ")";
}

inline SparseOperator tensor_product(const SparseOperator& f, const SparseOperator& b) {
  SparseOperator out;
  out.domain = product_label(f.domain, b.domain);
  out.codomain = product_label(f.codomain, b.codomain);
  out.mat.resize(f.rows() * b.rows(), f.cols() * b.cols());
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(f.mat.nonZeros()) * b.mat.nonZeros());
  for (int kf = 0; kf < f.mat.outerSize(); ++kf)
    for (SpMat::InnerIterator itf(f.mat, kf); itf; ++itf)
      for (int kb = 0; kb < b.mat.outerSize(); ++kb)
        for (SpMat::InnerIterator itb(b.mat, kb); itb; ++itb)
          trips.emplace_back(itf.row() * b.rows() + itb.row(), itf.col() * b.cols() + itb.col(),
                             itf.value() * itb.value());
  out.mat.setFromTriplets(trips.begin(), trips.end());
  out.hermitian = f.hermitian && b.hermitian;
  return out;
}

inline Vec tensor_product(const Vec& f, const Vec& b) {
  Vec out(f.size() * b.size());
  for (Index i = 0; i < f.size(); ++i) out.segment(i * b.size(), b.size()) = f(i) * b;
  return out;
}

// rank-one projector onto the zero-occupation state
inline SparseOperator vacuum_projector(const BosonBasis& basis) {
  std::vector<Triplet> trips{Triplet(0, 0, 1.0)};
  auto op = make_operator(basis.label(), basis.dim(), basis.label(), basis.dim(), trips);
  op.hermitian = true;
  return op;
}

// diagonal projector onto states with every mode occupation <= cap; the
// truncated canonical commutation relations hold exactly under it
inline SparseOperator occupation_cap_projector(const BosonBasis& basis, int cap) {
  require(cap >= 0, "occupation projector: negative cap");
  const Index dim = basis.dim();
  std::vector<Triplet> trips;
  for (Index s = 0; s < dim; ++s) {
    bool keep = true;
    for (int m = 0; m < basis.n_modes && keep; ++m) keep = basis.occupation(s, m) <= cap;
    if (keep) trips.emplace_back(s, s, 1.0);
  }
  auto op = make_operator(basis.label(), dim, basis.label(), dim, trips);
  op.hermitian = true;
  return op;
}

}  // namespace focklimit
