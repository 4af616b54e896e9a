#pragma once

#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cstlab/group.hpp"
#include "cstlab/irreps.hpp"
#include "cstlab/quadrature.hpp"

namespace cstlab {

// Finite coefficient expansion over the normalized frame e_Rij = sqrt(d_R) R_ij,
// so the L2(K) norm is the coefficient l2 norm. Represents both f on K and its
// holomorphic continuation on K_C. All hbar-dependence lives in the operators,
// never in the frame.
struct PeterWeylVector {
  GroupSpec spec;
  double cutoff = 0.0;  // casimir bound the vector was built under
  std::map<MatrixElementIndex, std::complex<double>, MatrixElementIndexLess> coeff;

  void set(const MatrixElementIndex& idx, std::complex<double> value);
  std::complex<double> get(const MatrixElementIndex& idx) const;

  std::vector<IrrepLabel> labels() const;
  double l2_norm() const;
  double max_growth_rate() const;

  std::complex<double> evaluate_on_K(const GroupPoint& x) const;
  std::complex<double> evaluate_on_KC(const ComplexGroupPoint& g) const;
};

// Smallest casimir cutoff whose dropped heat-series tail is negligible at the
// requested hbar, for evaluation points with |Y| <= growth_r.
double heat_series_cutoff(const GroupSpec& spec, double hbar, double growth_r = 0.0);

// Heat kernel rho_hbar = sum_R d_R e^{-hbar c_R / 2} chi_R, truncated with a
// checked tail bound. cutoff < 0 selects the automatic cutoff; an explicit
// cutoff whose tail exceeds 1e-12 raises a "tail bound violated" error.
std::complex<double> heat_kernel(const GroupSpec& spec, double hbar, const ComplexGroupPoint& g,
                                 double growth_r = 0.0, double cutoff = -1.0);

// Spectral CST: coefficientwise multiplication by e^{-hbar c_R / 2}.
PeterWeylVector cst_apply(const GroupSpec& spec, double hbar, const PeterWeylVector& f);

// Inverse on the image; refuses amplifications beyond 1e12 times the input norm.
PeterWeylVector cst_invert(const GroupSpec& spec, double hbar, const PeterWeylVector& F);

// Parallel transport between CST fibers: factor e^{-(hbar2 - hbar1) c_R / 2}.
PeterWeylVector parallel_transport_H(const GroupSpec& spec, double hbar1, double hbar2,
                                     const PeterWeylVector& F);

// Generator of the CST connection: coefficientwise factor c_R / 2.
PeterWeylVector delta_H_generator(const GroupSpec& spec, const PeterWeylVector& F);

// Convolution-integral oracle for the CST at a single K_C point:
// quadrature of int_K f(x) rho_hbar(x^{-1} g) dx over the K factor of the rule.
std::complex<double> cst_convolution_at(const QuadratureRule& rule, const GroupSpec& spec,
                                        double hbar, const PeterWeylVector& f,
                                        const ComplexGroupPoint& g, double growth_r = 0.0);

// Spectral inner products on coefficient vectors.
std::complex<double> inner_L2K_spectral(const PeterWeylVector& f, const PeterWeylVector& g);
std::complex<double> inner_HL2_spectral(const GroupSpec& spec, double hbar,
                                        const PeterWeylVector& F, const PeterWeylVector& G);

// Quadrature inner products through a precomputed battery gram; the vectors
// must be supported on the battery's labels.
std::complex<double> pair_through_gram(const std::vector<MatrixElementIndex>& basis,
                                       const Eigen::MatrixXcd& gram, const PeterWeylVector& F,
                                       const PeterWeylVector& G);

// Random band-limited vector with unit-scale complex Gaussian coefficients.
PeterWeylVector random_band_limited(const GroupSpec& spec, double cutoff, std::mt19937& rng);

// JSON import/export with the stable basis ordering:
// {group: {family, n}, cutoff, entries: [{label, i, j, re, im}]}.
std::string pw_to_json(const PeterWeylVector& v);
PeterWeylVector pw_from_json(const std::string& text);

}  // namespace cstlab
