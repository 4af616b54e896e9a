#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "cstlab/group.hpp"
#include "cstlab/irreps.hpp"

namespace cstlab {

// Grid parameters; stored in every rule for provenance. max_growth_rate is
// the rate g of the worst e^{g|Y|} amplification among integrands the rule
// must certify (pairs of matrix elements under the configured cutoff).
struct GridSpec {
  // torus
  int points_per_angle = 32;
  // su2
  int euler_alpha_points = 12;
  int euler_gamma_points = 24;
  int legendre_beta_nodes = 12;
  int angular_sphere_rule = 10;  // product-Gauss order on S^2
  // shared
  int radial_nodes = 120;
  double radial_truncation_sigmas = 12.0;
  double max_growth_rate = 0.0;

  GridSpec refined(int factor) const;
};

// Deterministic product rule on K x Lie algebra realizing the Liouville
// measure: normalized Haar on the K factor, truncated Lebesgue on the algebra.
struct QuadratureRule {
  GroupSpec spec;
  GridSpec grid;
  double hbar_ref = 1.0;
  double r_max = 0.0;

  std::vector<GroupPoint> k_nodes;
  Eigen::VectorXd k_weights;  // sums to 1
  std::vector<AlgebraPoint> y_nodes;
  Eigen::VectorXd y_weights;  // Lebesgue weights on the truncated algebra

  std::size_t total_nodes() const { return k_nodes.size() * y_nodes.size(); }
};

// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// Growth rate for pair products of matrix elements under a casimir cutoff.
double pair_growth_rate(const GroupSpec& spec, double rep_cutoff);

QuadratureRule build_rule(const GroupSpec& spec, const GridSpec& grid, double hbar_ref);

using PhaseSpaceFn =
    std::function<std::complex<double>(const GroupPoint&, const AlgebraPoint&)>;
using GroupFn = std::function<std::complex<double>(const GroupPoint&)>;
using HoloFn = std::function<std::complex<double>(const ComplexGroupPoint&)>;

// sum w_k f(node_k) over the product rule; pairwise summation in fixed order.
std::complex<double> integrate_liouville(const QuadratureRule& rule, const PhaseSpaceFn& f);

// Integral of conj(f) g over K against normalized Haar.
std::complex<double> inner_L2K(const QuadratureRule& rule, const GroupFn& f, const GroupFn& g);

// Integral of conj(F) G against d nu_hbar, with F, G evaluated at x e^{iY}.
std::complex<double> inner_HL2(const QuadratureRule& rule, const GroupSpec& spec, double hbar,
                               const HoloFn& F, const HoloFn& G);

// Quantum inner product: integral of conj(F) G e^{-s|Y|^2/hbar0} |Omega_s|
// against the Liouville measure, with F, G evaluated at x e^{isY}.
std::complex<double> inner_quantum(const QuadratureRule& rule, const GroupSpec& spec, double s,
                                   double hbar0, const HoloFn& F, const HoloFn& G);

// Throws when the rule's radial truncation cannot carry the requested
// Gaussian scale at its configured growth rate. gaussian_scale is the hbar of
// the damping e^{-|Y|^2/hbar}; growth_scale multiplies the growth rate in the
// peak-location estimate.
void require_truncation(const QuadratureRule& rule, double gaussian_scale, double growth_scale);

// Matrix-element basis in the stable order: labels sorted by (casimir, label),
// then row-major (i, j) within each block.
std::vector<MatrixElementIndex> matrix_element_basis(const GroupSpec& spec, double cutoff);

// Gram matrix of the normalized frame sqrt(d_R) R_ij over the K factor alone;
// Schur orthogonality makes the exact value the identity.
Eigen::MatrixXcd schur_gram(const QuadratureRule& rule, const GroupSpec& spec,
                            const std::vector<IrrepLabel>& labels);

// Gram matrix of the normalized frame over the full product rule with an
// algebra-side weight W(Y) against the Liouville measure, matrix elements
// evaluated at x e^{i s Y}. Exact regrouping of the product-rule sum: the K
// factor is contracted once per irrep pair, the algebra factor accumulated
// over algebra nodes.
Eigen::MatrixXcd weighted_gram(const QuadratureRule& rule, const GroupSpec& spec,
                               const std::vector<IrrepLabel>& labels, double s_compose,
                               const std::function<double(const AlgebraPoint&)>& weight);

// Weighted gram specializations.
Eigen::MatrixXcd hl2_gram(const QuadratureRule& rule, const GroupSpec& spec,
                          const std::vector<IrrepLabel>& labels, double hbar);
Eigen::MatrixXcd quantum_gram(const QuadratureRule& rule, const GroupSpec& spec,
                              const std::vector<IrrepLabel>& labels, double s, double hbar0);

struct CertifyReport {
  double max_schur_err = 0.0;  // vs delta_{ab} in the normalized frame
  double max_nu_err = 0.0;     // vs delta_{ab} e^{hbar c_R} in the normalized frame
  double max_mass_err = 0.0;   // total nu mass vs 1
  double tolerance = 0.0;
  bool pass = false;
};

// Runs the Schur and nu-orthogonality batteries for all matrix elements with
// casimir <= rep_cutoff at each hbar; fails loudly above tolerance.
CertifyReport certify(const QuadratureRule& rule, const GroupSpec& spec, double rep_cutoff,
                      double tolerance, const std::vector<double>& hbars = {0.25, 1.0});

}  // namespace cstlab
