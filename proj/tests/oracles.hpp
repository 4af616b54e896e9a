// Test-only oracles, independent of the library's evaluation paths.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cstlab::oracles {

// Truncated-series matrix exponential.
inline Eigen::Matrix2cd expm_series(const Eigen::Matrix2cd& m) {
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity();
  for (int k = 1; k <= 40; ++k) {
    term = term * m / double(k);
    sum += term;
  }
  return sum;
}

// Positive root value alpha(Y) from the eigenvalues of ad(Y) on the
// complexified algebra, basis (X_1, X_2, X_3) with [X_i, X_j] = eps_ijk X_k.
inline double su2_root_value(const Eigen::Vector3d& y) {
  Eigen::Matrix3d ad;
  ad << 0, -y[2], y[1], y[2], 0, -y[0], -y[1], y[0], 0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(ad);
  double a = 0.0;
  for (int k = 0; k < 3; ++k) a = std::max(a, es.eigenvalues()[k].imag());
  return a;
}

// int_R (y^2/(2 hbar^2) - 1/(4 hbar)) e^{-y^2/hbar - 2 m y} dy, closed form.
inline double gaussian_heat_moment_1d(double hbar, double m) {
  const double mass = std::sqrt(M_PI * hbar) * std::exp(m * m * hbar);
  const double mean_sq = 0.5 * hbar + m * m * hbar * hbar;  // E[y^2] at mean -m hbar
  return mass * (0.5 * mean_sq / (hbar * hbar) - 0.25 / hbar);
}

// Jacobi-theta style direct summation of the circle heat kernel.
inline std::complex<double> torus_heat_theta(double hbar, std::complex<double> z) {
  std::complex<double> sum{1.0, 0.0};
  const std::complex<double> iz{-z.imag(), z.real()};
  for (int m = 1; m < 400; ++m) {
    const double damp = std::exp(-0.5 * hbar * m * m);
    sum += damp * (std::exp(double(m) * iz) + std::exp(-double(m) * iz));
    if (damp < 1e-18) break;
  }
  return sum;
}

// Symmetric tensor-square of the defining SL(2,C) representation in the
// orthonormal basis (u1 u1, (u1 u2 + u2 u1)/sqrt(2), u2 u2).
inline Eigen::Matrix3cd sym_square(const Eigen::Matrix2cd& g) {
  Eigen::Matrix<std::complex<double>, 3, 4> p = Eigen::Matrix<std::complex<double>, 3, 4>::Zero();
  const double rt = 1.0 / std::sqrt(2.0);
  p(0, 0) = 1.0;
  p(1, 1) = rt;
  p(1, 2) = rt;
  p(2, 3) = 1.0;
  Eigen::Matrix4cd gg = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) gg(2 * a + c, 2 * b + d) = g(a, b) * g(c, d);
  return p * gg * p.transpose();
}

}  // namespace cstlab::oracles
