#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cstlab/group.hpp"

namespace cstlab {

// Label of an irreducible representation. Torus: weight vector m in Z^n,
// dimension 1. SU2: twice_spin = 2j, dimension 2j + 1.
struct IrrepLabel {
  Family family = Family::Torus;
  Eigen::VectorXi weight;  // torus
  int twice_spin = 0;      // su2

  static IrrepLabel torus(Eigen::VectorXi m);
  static IrrepLabel su2(int twice_spin);
  static IrrepLabel trivial(const GroupSpec& spec);

  bool operator==(const IrrepLabel& o) const;
};

// Canonical order: (casimir, lexicographic weight) / twice_spin. Used for the
// stable basis order across runs.
bool label_less(const IrrepLabel& a, const IrrepLabel& b);

// Index into the matrix-element basis R_ij; i, j are 1-based and run over the
// weight basis ordered from highest weight down.
struct MatrixElementIndex {
  IrrepLabel label;
  int i = 1;
  int j = 1;

  bool operator==(const MatrixElementIndex& o) const {
    return label == o.label && i == o.i && j == o.j;
  }
};

struct MatrixElementIndexLess {
  bool operator()(const MatrixElementIndex& a, const MatrixElementIndex& b) const;
};

int irrep_dim(const IrrepLabel& label);

// Eigenvalue of -Delta on the representation: |m|^2 / a^2 j(j+1).
double casimir(const GroupSpec& spec, const IrrepLabel& label);

// Growth rate g of a single matrix element off the compact locus:
// |R_ij(x e^{iY})| <= e^{g |Y|}. Torus: |m|; SU2: j a.
double matrix_element_growth_rate(const GroupSpec& spec, const IrrepLabel& label);

// All labels with casimir <= cutoff, sorted by (casimir, canonical order).
std::vector<IrrepLabel> enumerate_irreps(const GroupSpec& spec, double cutoff);

// Holomorphic representation matrix at g in K_C (restriction to K is the
// standard unitary Wigner D). SU2 uses the symmetric-power polynomial formula,
// valid on all of SL(2, C); supported up to twice_spin = 60.
Eigen::MatrixXcd irrep_matrix(const IrrepLabel& label, const ComplexGroupPoint& g);
Eigen::MatrixXcd irrep_matrix(const IrrepLabel& label, const GroupPoint& x);

std::complex<double> matrix_element(const MatrixElementIndex& idx, const ComplexGroupPoint& g);
std::complex<double> character(const IrrepLabel& label, const ComplexGroupPoint& g);

// Max-norm of D(g1 g2) - D(g1) D(g2); property-test probe.
double representation_homomorphism_residual(const IrrepLabel& label,
                                            const ComplexGroupPoint& g1,
                                            const ComplexGroupPoint& g2);

}  // namespace cstlab
