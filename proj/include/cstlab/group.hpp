#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace cstlab {

enum class Family { Torus, SU2 };

// Immutable description of K and its Lie algebra data. For SU(2) the basis is
// X_k = -i sigma_k / 2, orthonormal for (X, Y) = -2 tr(XY); the positive root
// slope is derived numerically from ad(X_3) at construction.
struct GroupSpec {
  Family family = Family::Torus;
  int n = 1;     // dim K
  int rank = 1;  // dim of the Cartan subalgebra
  std::vector<Eigen::VectorXd> positive_roots;  // coefficient vectors in the orthonormal basis
  double weyl_vector_norm_sq = 0.0;             // |rho|^2
  double root_slope = 0.0;                      // a with alpha(r X_3) = a r; 0 for the torus
  std::string casimir_convention;

  static GroupSpec torus(int k);
  static GroupSpec su2();

  bool is_torus() const { return family == Family::Torus; }
  std::string family_name() const { return is_torus() ? "torus" : "su2"; }
};

// Point Y of the Lie algebra in the orthonormal basis {X_i}.
struct AlgebraPoint {
  Eigen::VectorXd y;

  double norm_sq() const { return y.squaredNorm(); }
  double norm() const { return y.norm(); }
};

// Element of K. Torus: angle vector in [0, 2pi)^n. SU2: unitary 2x2, det 1.
struct GroupPoint {
  Family family = Family::Torus;
  Eigen::VectorXd angles;  // torus
  Eigen::Matrix2cd u;      // su2

  static GroupPoint torus(Eigen::VectorXd theta);
  static GroupPoint su2(const Eigen::Matrix2cd& u);  // residual checks per construction tolerance
  static GroupPoint identity(const GroupSpec& spec);
};

// Element of K_C reached as x e^{isY}. Constructed only through
// compose_complex or products; never decomposed back into (x, Y).
struct ComplexGroupPoint {
  Family family = Family::Torus;
  Eigen::VectorXcd angles;  // torus: theta + i s y
  Eigen::Matrix2cd m;       // su2: element of SL(2, C)

  static ComplexGroupPoint torus(Eigen::VectorXcd z);
  static ComplexGroupPoint su2(const Eigen::Matrix2cd& m);
};

// sinh(t)/t with the removable singularity evaluated by its Taylor polynomial.
double sinhc(double t);

// eta(Y) = prod over positive roots of sinh(alpha(Y)) / alpha(Y); 1 on the torus.
double eta(const GroupSpec& spec, const AlgebraPoint& Y);

// kappa_s = s |Y|^2.
double kahler_potential(double s, const AlgebraPoint& Y);

// |Omega_s| = s^{n/2} eta(sY).
double half_form_density(const GroupSpec& spec, double s, const AlgebraPoint& Y);

// Density of the K_C Haar pullback against the Liouville measure: s^n eta(sY)^2.
double kc_haar_density(const GroupSpec& spec, double s, const AlgebraPoint& Y);

// c_hbar = (pi hbar)^{-n/2} e^{-|rho|^2 hbar}.
double c_hbar(const GroupSpec& spec, double hbar);

// Density of the K-averaged heat kernel measure nu_hbar against the Liouville
// measure: c_hbar e^{-|Y|^2 / hbar} eta(Y). Independent of the K factor.
double nu_density_vs_liouville(const GroupSpec& spec, double hbar, const AlgebraPoint& Y);

// (x, Y) -> x e^{isY} in K_C. The SU(2) exponential is closed-form.
ComplexGroupPoint compose_complex(const GroupPoint& x, double s, const AlgebraPoint& Y);

// exp(sum y_k X_k) in SU(2), X_k = -i sigma_k / 2.
Eigen::Matrix2cd su2_exp_real(const Eigen::Vector3d& y);

// exp(i s sum y_k X_k) in SL(2, C).
Eigen::Matrix2cd su2_exp_imag(double s, const Eigen::Vector3d& y);

// z-y-z Euler angles: e^{alpha X_3} e^{beta X_2} e^{gamma X_3}.
GroupPoint su2_from_euler(double alpha, double beta, double gamma);

GroupPoint group_multiply(const GroupPoint& a, const GroupPoint& b);
GroupPoint group_inverse(const GroupPoint& a);

// x * g with x in K, g in K_C.
ComplexGroupPoint complex_left_multiply(const GroupPoint& x, const ComplexGroupPoint& g);

}  // namespace cstlab
