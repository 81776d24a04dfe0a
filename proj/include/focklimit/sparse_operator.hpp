#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCore>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace focklimit {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;
using DenseMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Complex sparse matrix tagged with the bases it maps between.  Every operator
// in the library rides on this type; the label checks make cross-space
// arithmetic fail loudly instead of producing shape accidents.
struct SparseOperator {
  std::string domain;    // basis the operator consumes
  std::string codomain;  // basis it produces
  SpMat mat;             // codomain-dim x domain-dim
  bool hermitian = false;

  Index rows() const { return mat.rows(); }
  Index cols() const { return mat.cols(); }

  SparseOperator adjoint() const {
    SparseOperator out;
    out.domain = codomain;
    out.codomain = domain;
    out.mat = mat.adjoint();
    out.hermitian = hermitian;
    return out;
  }
};

inline SparseOperator make_operator(const std::string& domain, Index dom_dim,
                                    const std::string& codomain, Index codom_dim,
                                    const std::vector<Triplet>& trips) {
  SparseOperator op;
  op.domain = domain;
  op.codomain = codomain;
  op.mat.resize(codom_dim, dom_dim);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

inline SparseOperator identity_operator(const std::string& basis, Index dim) {
  SparseOperator op;
  op.domain = basis;
  op.codomain = basis;
  op.mat.resize(dim, dim);
  op.mat.setIdentity();
  op.hermitian = true;
  return op;
}

inline SparseOperator zero_operator(const std::string& basis, Index dim) {
  SparseOperator op;
  op.domain = basis;
  op.codomain = basis;
  op.mat.resize(dim, dim);
  return op;
}

inline void require_same_spaces(const SparseOperator& a, const SparseOperator& b,
                                const char* what) {
  require(a.domain == b.domain && a.codomain == b.codomain,
          std::string(what) + ": operators live on different bases (" + a.domain + "->" +
              a.codomain + " vs " + b.domain + "->" + b.codomain + ")");
}

inline SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  require_same_spaces(a, b, "operator+");
  SparseOperator out;
  out.domain = a.domain;
  out.codomain = a.codomain;
  out.mat = a.mat + b.mat;
  return out;
}

inline SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  require_same_spaces(a, b, "operator-");
  SparseOperator out;
  out.domain = a.domain;
  out.codomain = a.codomain;
  out.mat = a.mat - b.mat;
  return out;
}

inline SparseOperator operator*(cplx s, const SparseOperator& a) {
  SparseOperator out;
  out.domain = a.domain;
  out.codomain = a.codomain;
  out.mat = s * a.mat;
  return out;
}

inline SparseOperator operator*(double s, const SparseOperator& a) { return cplx(s, 0.0) * a; }

inline SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  require(a.domain == b.codomain, "operator*: composition mismatch (" + a.domain +
                                      " consumed, " + b.codomain + " produced)");
  SparseOperator out;
  out.domain = b.domain;
  out.codomain = a.codomain;
  out.mat = a.mat * b.mat;
  return out;
}

inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

inline SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b + b * a;
}

inline double max_abs_entry(const SpMat& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

inline double max_abs_entry(const SparseOperator& op) { return max_abs_entry(op.mat); }

// Largest |entry| of M - M^dagger; zero for an exactly Hermitian matrix.
inline double hermiticity_defect(const SparseOperator& op) {
  require(op.rows() == op.cols(), "hermiticity_defect: operator not square");
  SpMat diff = SpMat(op.mat.adjoint()) - op.mat;
  return max_abs_entry(diff);
}

inline SparseOperator& mark_hermitian(SparseOperator& op, double tol = 1e-14) {
  const double defect = hermiticity_defect(op);
  if (defect > tol)
    throw std::invalid_argument("mark_hermitian: defect " + std::to_string(defect) +
                                " exceeds tolerance");
  op.hermitian = true;
  return op;
}

inline DenseMat dense(const SparseOperator& op) { return DenseMat(op.mat); }

inline double frobenius_norm(const SparseOperator& op) { return op.mat.norm(); }

// Spectral (2-) norm via dense SVD; intended for the small factor spaces.
inline double operator_norm(const SparseOperator& op) {
  const DenseMat m = dense(op);
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 64) {
    Eigen::JacobiSVD<DenseMat> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<DenseMat> svd(m);
  return svd.singularValues()(0);
}

// Spectral norm of a Hermitian operator = largest |eigenvalue|; cheaper than a
// full SVD and the right tool for the big product-space differences.
inline double operator_norm_hermitian(const SparseOperator& op) {
  Eigen::SelfAdjointEigenSolver<DenseMat> es(dense(op), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

struct StateVector {
  std::string basis;
  Vec amps;

  double norm() const { return amps.norm(); }
};

inline Vec apply(const SparseOperator& op, const Vec& v) {
  require(op.cols() == v.size(), "apply: dimension mismatch");
  return op.mat * v;
}

inline StateVector apply(const SparseOperator& op, const StateVector& psi) {
  require(op.domain == psi.basis,
          "apply: state on basis " + psi.basis + ", operator consumes " + op.domain);
  return StateVector{op.codomain, op.mat * psi.amps};
}

}  // namespace focklimit
