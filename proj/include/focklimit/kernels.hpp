#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "focklimit/grids.hpp"
#include "focklimit/sparse_operator.hpp"

namespace focklimit {

inline constexpr double pi_const = 3.141592653589793238462643383279502884;

enum class KernelProvenance { discrete_mode_sum, continuum_quadrature };

inline std::string to_string(KernelProvenance p) {
  return p == KernelProvenance::discrete_mode_sum ? "discrete-mode-sum" : "continuum-quadrature";
}

struct KernelMatrix {
  Eigen::Vector3d z = Eigen::Vector3d::Zero();
  Eigen::Matrix3cd entries = Eigen::Matrix3cd::Zero();
  KernelProvenance provenance = KernelProvenance::discrete_mode_sum;
};

// Transverse propagation kernel as a finite mode sum:
//   lambda_{jl}(z) = sum_i w_i |chi(k_i)|^2 / ((2pi)^3 |k_i|^2)
//                    (delta_jl - k_j k_l / |k|^2) e^{-i k_i . z}
inline KernelMatrix lambda_discrete(const Eigen::Vector3d& z, const MomentumGrid& grid,
                                    const std::vector<cplx>& chi_rad) {
  require(static_cast<int>(chi_rad.size()) == grid.size(),
          "kernel: cutoff sample count does not match grid");
  KernelMatrix out;
  out.z = z;
  out.provenance = KernelProvenance::discrete_mode_sum;
  const cplx mi(0.0, -1.0);
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::Vector3d& k = grid.nodes[i];
    const double k2 = k.squaredNorm();
    const cplx c =
        grid.weights[i] * std::norm(chi_rad[i]) / (two_pi_cubed * k2) * std::exp(mi * k.dot(z));
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        out.entries(j, l) += c * ((j == l ? 1.0 : 0.0) - k[j] * k[l] / k2);
  }
  return out;
}

// Entrywise uniform bound: same sum with |transverse projector| in place of
// the phase-weighted projector, so |lambda_{jl}(z)| <= gamma_{jl} for all z.
inline Eigen::Matrix3d gamma_bound(const MomentumGrid& grid, const std::vector<cplx>& chi_rad) {
  require(static_cast<int>(chi_rad.size()) == grid.size(),
          "kernel: cutoff sample count does not match grid");
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::Vector3d& k = grid.nodes[i];
    const double k2 = k.squaredNorm();
    const double c = grid.weights[i] * std::norm(chi_rad[i]) / (two_pi_cubed * k2);
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) g(j, l) += c * std::abs((j == l ? 1.0 : 0.0) - k[j] * k[l] / k2);
  }
  return g;
}

// symmetrized kernel delta(z) = lambda(z) + lambda(-z)
inline Eigen::Matrix3cd delta_discrete(const Eigen::Vector3d& z, const MomentumGrid& grid,
                                       const std::vector<cplx>& chi_rad) {
  return lambda_discrete(z, grid, chi_rad).entries + lambda_discrete(-z, grid, chi_rad).entries;
}

// Gauss-Legendre rule on [-1, 1] by Newton iteration on the recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  require(n >= 1, "gauss_legendre: need at least one node");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  auto legendre = [n](double t) {
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
    }
    const double dp = n * (t * p0 - p1) / (t * t - 1.0);
    return std::pair<double, double>(p0, dp);
  };
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(pi_const * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 64; ++iter) {
      const auto [p, dp] = legendre(t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    const auto [p, dp] = legendre(t);
    (void)p;
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    w[n - 1 - i] = w[i];
  }
}

struct QuadSpec {
  int radial = 64;
  int angular = 86;  // split into a Gauss-Legendre cos(theta) rule times uniform phi
};

namespace detail {

struct AngularRule {
  std::vector<Eigen::Vector3d> dirs;
  std::vector<double> weights;  // include the 2*pi/n_phi factor
};

inline AngularRule angular_rule(int angular) {
  const int n_u = std::max(2, static_cast<int>(std::floor(std::sqrt(angular / 2.0))));
  const int n_phi = std::max(4, static_cast<int>(std::ceil(static_cast<double>(angular) / n_u)));
  std::vector<double> u, wu;
  gauss_legendre(n_u, u, wu);
  AngularRule rule;
  rule.dirs.reserve(static_cast<std::size_t>(n_u) * n_phi);
  rule.weights.reserve(rule.dirs.capacity());
  for (int a = 0; a < n_u; ++a) {
    const double s = std::sqrt(std::max(0.0, 1.0 - u[a] * u[a]));
    for (int m = 0; m < n_phi; ++m) {
      const double phi = 2.0 * pi_const * (m + 0.5) / n_phi;
      rule.dirs.emplace_back(s * std::cos(phi), s * std::sin(phi), u[a]);
      rule.weights.push_back(wu[a] * 2.0 * pi_const / n_phi);
    }
  }
  return rule;
}

}  // namespace detail

// Continuum reference for the kernel: spherical quadrature of
// (2pi)^{-3} int |chi(|k|)|^2 (delta_jl - khat_j khat_l) e^{-i k.z} dk,
// where the radial r^2 cancels the 1/|k|^2 so the integrand is smooth.
// Profiles whose square does not decay (flat "one") have no continuum kernel.
inline KernelMatrix lambda_quadrature(const Eigen::Vector3d& z, const CutoffProfile& profile,
                                      const QuadSpec& spec = QuadSpec{}) {
  if (!profile.integrable_kernel())
    throw std::domain_error("kernel quadrature: cutoff profile is not square-integrable against 1/|k|^2");
  const double R = profile.support_radius();
  std::vector<double> xr, wr;
  gauss_legendre(spec.radial, xr, wr);
  const auto rule = detail::angular_rule(spec.angular);

  KernelMatrix out;
  out.z = z;
  out.provenance = KernelProvenance::continuum_quadrature;
  const cplx mi(0.0, -1.0);
  for (int a = 0; a < static_cast<int>(rule.dirs.size()); ++a) {
    const Eigen::Vector3d& d = rule.dirs[a];
    Eigen::Matrix3d proj;
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) proj(j, l) = (j == l ? 1.0 : 0.0) - d[j] * d[l];
    cplx radial = 0.0;
    for (int q = 0; q < spec.radial; ++q) {
      const double r = 0.5 * R * (xr[q] + 1.0);
      const double chi = profile(r);
      radial += 0.5 * R * wr[q] * chi * chi * std::exp(mi * r * d.dot(z));
    }
    const cplx c = rule.weights[a] * radial / two_pi_cubed;
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) out.entries(j, l) += c * proj(j, l);
  }
  return out;
}

}  // namespace focklimit
