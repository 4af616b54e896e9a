#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cstlab/cst.hpp"
#include "cstlab/group.hpp"
#include "cstlab/quadrature.hpp"
#include "cstlab/report.hpp"

namespace cstlab {

// Section F(x e^{isY}) e^{-s|Y|^2 / 2 hbar0} sqrt(Omega_s) of the quantum
// bundle fiber at s, in the moving holomorphic frame; when a_normalized is set the
// section carries an extra 1 / sqrt(a_s).
struct QuantumSection {
  double s = 1.0;
  double hbar0 = 1.0;
  PeterWeylVector F;
  bool a_normalized = false;
};

// a_s = (pi hbar0)^{n/2} e^{|rho|^2 hbar0 s}.
double a_factor(const GroupSpec& spec, double s, double hbar0);

// Quantum inner product of two sections through the quadrature rule.
std::complex<double> inner_quantum_sections(const QuadratureRule& rule, const QuantumSection& a,
                                            const QuantumSection& b);

struct NormReport {
  double direct = 0.0;    // quadrature of the T*K integral
  double spectral = 0.0;  // a_s-weighted coefficient sum
};

NormReport quantum_norm(const QuadratureRule& rule, const QuantumSection& sigma);

// Heat-operator action of the quantum connection: coefficientwise factor
// (hbar0 / 2)(c_R + |rho|^2).
QuantumSection delta_Q_apply(const QuantumSection& sigma);

// Independent weighted-integral evaluation of <delta_Q sigma, zeta>:
// s^{-n/2} int conj(F) G hbar0 (|Y|^2/2hbar^2 - n/4hbar) e^{-|Y|^2/hbar}/eta dg
// with hbar = s hbar0, realized against the Liouville measure.
std::complex<double> delta_Q_pairing_direct(const QuadratureRule& rule,
                                            const QuantumSection& sigma,
                                            const QuantumSection& zeta);

// Weak verification of the heat-measure evolution identity: max relative
// mismatch between the weighted-integral and spectral pairing forms over all
// matrix-element probe pairs with casimir <= probe_cutoff, at s = 1, hbar0 = hbar.
double heat_pairing_residual(const QuadratureRule& rule, const GroupSpec& spec, double hbar,
                     double probe_cutoff);

// Full spectral-vs-integral battery for the quantum connection at (s, hbar0).
std::vector<CheckResult> connection_battery(const QuadratureRule& rule, const GroupSpec& spec,
                                            double s, double hbar0, double probe_cutoff,
                                            double tolerance);

// Finite-difference heat-equation residual for an s-family of holomorphic
// data: max per-coefficient relative error of
// (F(s+ds) - F(s-ds)) / 2ds against -(hbar0/2) c_R F(s).
double horizontality_residual(const GroupSpec& spec, double hbar0,
                              const std::function<PeterWeylVector(double)>& family, double s,
                              double ds);

// Unitary identification of the CST fiber at hbar = s hbar0 with the quantum
// fiber at s: wraps the holomorphic datum with the 1/sqrt(a_s) normalization.
QuantumSection s_isomorphism(const GroupSpec& spec, double hbar0, double s,
                             const PeterWeylVector& F);

// Residual of the pointwise constant-bookkeeping identity
// a_s nu(s hbar0, sY) s^n = e^{-s|Y|^2/hbar0} |Omega_s|(Y).
double density_identity_residual(const GroupSpec& spec, double s, double hbar0,
                                 const AlgebraPoint& Y);

}  // namespace cstlab
