#include "cstlab/group.hpp"

#include <cmath>
#include <stdexcept>

namespace cstlab {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// ad(X_3) in the basis (X_1, X_2, X_3): [X_3, X_1] = X_2, [X_3, X_2] = -X_1.
Eigen::Matrix3d su2_ad_x3() {
  Eigen::Matrix3d ad = Eigen::Matrix3d::Zero();
  ad(1, 0) = 1.0;
  ad(0, 1) = -1.0;
  return ad;
}

// Positive-root slope a with alpha(r X_3) = a r, read off as the largest
// imaginary part among the eigenvalues of ad(X_3) on the complexified algebra.
double su2_root_slope() {
  Eigen::EigenSolver<Eigen::Matrix3d> es(su2_ad_x3());
  double a = 0.0;
  for (int k = 0; k < 3; ++k) a = std::max(a, es.eigenvalues()[k].imag());
  return a;
}

void check_su2_unitary(const Eigen::Matrix2cd& u) {
  const double res_unit = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  const double res_det = std::abs(u.determinant() - 1.0);
  if (res_unit > 1e-12 || res_det > 1e-12)
    throw std::invalid_argument("GroupPoint::su2: unitarity/determinant residual above 1e-12");
}

}  // namespace

GroupSpec GroupSpec::torus(int k) {
  if (k < 1) throw std::invalid_argument("GroupSpec::torus: dimension must be positive");
  GroupSpec spec;
  spec.family = Family::Torus;
  spec.n = k;
  spec.rank = k;
  spec.weyl_vector_norm_sq = 0.0;
  spec.root_slope = 0.0;
  spec.casimir_convention =
      "X_i = d/dtheta_i orthonormal; Delta = sum X_i^2, c_m = |m|^2";
  return spec;
}

GroupSpec GroupSpec::su2() {
  GroupSpec spec;
  spec.family = Family::SU2;
  spec.n = 3;
  spec.rank = 1;
  const double a = su2_root_slope();
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(3);
  alpha[2] = a;
  spec.positive_roots = {alpha};
  spec.weyl_vector_norm_sq = 0.25 * a * a;  // rho = alpha / 2
  spec.root_slope = a;
  spec.casimir_convention =
      "X_k = -i sigma_k / 2 orthonormal for (X,Y) = -2 tr(XY); "
      "Delta = sum X_k^2, c_j = a^2 j(j+1)";
  return spec;
}

GroupPoint GroupPoint::torus(Eigen::VectorXd theta) {
  GroupPoint x;
  x.family = Family::Torus;
  x.angles = std::move(theta);
  return x;
}

GroupPoint GroupPoint::su2(const Eigen::Matrix2cd& u) {
  check_su2_unitary(u);
  GroupPoint x;
  x.family = Family::SU2;
  x.u = u;
  return x;
}

GroupPoint GroupPoint::identity(const GroupSpec& spec) {
  if (spec.is_torus()) return torus(Eigen::VectorXd::Zero(spec.n));
  return su2(Eigen::Matrix2cd::Identity());
}

ComplexGroupPoint ComplexGroupPoint::torus(Eigen::VectorXcd z) {
  ComplexGroupPoint g;
  g.family = Family::Torus;
  g.angles = std::move(z);
  return g;
}

ComplexGroupPoint ComplexGroupPoint::su2(const Eigen::Matrix2cd& m) {
  // relative tolerance: det is computed from products of entries, so its
  // rounding error scales with the squared entry magnitude
  const double scale = 1.0 + m.squaredNorm();
  if (std::abs(m.determinant() - 1.0) > 1e-10 * scale)
    throw std::invalid_argument("ComplexGroupPoint::su2: determinant residual above tolerance");
  ComplexGroupPoint g;
  g.family = Family::SU2;
  g.m = m;
  return g;
}

double sinhc(double t) {
  const double at = std::abs(t);
  if (at < 1e-4) {
    const double t2 = t * t;
    return 1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0;
  }
  return std::sinh(t) / t;
}

double eta(const GroupSpec& spec, const AlgebraPoint& Y) {
  if (spec.is_torus()) return 1.0;
  // Ad-invariance: only |Y| matters; rotate into the Cartan direction.
  return sinhc(spec.root_slope * Y.norm());
}

double kahler_potential(double s, const AlgebraPoint& Y) {
  if (s <= 0.0) throw std::invalid_argument("kahler_potential: s must be positive");
  return s * Y.norm_sq();
}

double half_form_density(const GroupSpec& spec, double s, const AlgebraPoint& Y) {
  if (s <= 0.0) throw std::invalid_argument("half_form_density: s must be positive");
  AlgebraPoint sY{s * Y.y};
  return std::pow(s, 0.5 * spec.n) * eta(spec, sY);
}

double kc_haar_density(const GroupSpec& spec, double s, const AlgebraPoint& Y) {
  if (s <= 0.0) throw std::invalid_argument("kc_haar_density: s must be positive");
  const double h = half_form_density(spec, s, Y);
  return h * h;
}

double c_hbar(const GroupSpec& spec, double hbar) {
  if (hbar <= 0.0) throw std::invalid_argument("c_hbar: hbar must be positive");
  return std::pow(M_PI * hbar, -0.5 * spec.n) * std::exp(-spec.weyl_vector_norm_sq * hbar);
}

double nu_density_vs_liouville(const GroupSpec& spec, double hbar, const AlgebraPoint& Y) {
  if (hbar <= 0.0) throw std::invalid_argument("nu_density_vs_liouville: hbar must be positive");
  return c_hbar(spec, hbar) * std::exp(-Y.norm_sq() / hbar) * eta(spec, Y);
}

Eigen::Matrix2cd su2_exp_real(const Eigen::Vector3d& y) {
  // exp(theta n.X) = cos(theta/2) I - i sin(theta/2) n.sigma
  const double theta = y.norm();
  Eigen::Matrix2cd out = std::cos(0.5 * theta) * Eigen::Matrix2cd::Identity();
  if (theta > 0.0) {
    const Eigen::Vector3d nv = y / theta;
    Eigen::Matrix2cd nsigma;
    nsigma << nv[2], std::complex<double>(nv[0], -nv[1]),
        std::complex<double>(nv[0], nv[1]), -nv[2];
    out -= kI * std::sin(0.5 * theta) * nsigma;
  }
  return out;
}

Eigen::Matrix2cd su2_exp_imag(double s, const Eigen::Vector3d& y) {
  // i s sum y_k X_k = (s/2) y.sigma, so exp = cosh(sr/2) I + sinh(sr/2) n.sigma
  const double r = y.norm();
  Eigen::Matrix2cd out = std::cosh(0.5 * s * r) * Eigen::Matrix2cd::Identity();
  if (r > 0.0) {
    const Eigen::Vector3d nv = y / r;
    Eigen::Matrix2cd nsigma;
    nsigma << nv[2], std::complex<double>(nv[0], -nv[1]),
        std::complex<double>(nv[0], nv[1]), -nv[2];
    out += std::sinh(0.5 * s * r) * nsigma;
  }
  return out;
}

GroupPoint su2_from_euler(double alpha, double beta, double gamma) {
  const Eigen::Matrix2cd u = su2_exp_real({0.0, 0.0, alpha}) *
                             su2_exp_real({0.0, beta, 0.0}) *
                             su2_exp_real({0.0, 0.0, gamma});
  return GroupPoint::su2(u);
}

ComplexGroupPoint compose_complex(const GroupPoint& x, double s, const AlgebraPoint& Y) {
  if (s <= 0.0) throw std::invalid_argument("compose_complex: s must be positive");
  if (x.family == Family::Torus)
    return ComplexGroupPoint::torus(x.angles.cast<std::complex<double>>() + kI * s * Y.y);
  return ComplexGroupPoint::su2(x.u * su2_exp_imag(s, Y.y.head<3>()));
}

GroupPoint group_multiply(const GroupPoint& a, const GroupPoint& b) {
  if (a.family == Family::Torus) return GroupPoint::torus(a.angles + b.angles);
  return GroupPoint::su2(a.u * b.u);
}

GroupPoint group_inverse(const GroupPoint& a) {
  if (a.family == Family::Torus) return GroupPoint::torus(-a.angles);
  return GroupPoint::su2(a.u.adjoint());
}

ComplexGroupPoint complex_left_multiply(const GroupPoint& x, const ComplexGroupPoint& g) {
  if (x.family == Family::Torus)
    return ComplexGroupPoint::torus(x.angles.cast<std::complex<double>>() + g.angles);
  return ComplexGroupPoint::su2(x.u * g.m);
}

}  // namespace cstlab
