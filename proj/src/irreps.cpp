#include "cstlab/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cstlab {

namespace {

constexpr int kMaxTwiceSpin = 60;

// Binomial table up to the supported polynomial degree.
const Eigen::MatrixXd& binomials() {
  static const Eigen::MatrixXd table = [] {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(kMaxTwiceSpin + 2, kMaxTwiceSpin + 2);
    for (int n = 0; n <= kMaxTwiceSpin + 1; ++n) {
      b(n, 0) = 1.0;
      for (int k = 1; k <= n; ++k)
        b(n, k) = (k == n) ? 1.0 : b(n - 1, k - 1) + b(n - 1, k);
    }
    return b;
  }();
  return table;
}

std::complex<double> ipow(std::complex<double> z, int p) {
  std::complex<double> out{1.0, 0.0};
  for (int k = 0; k < p; ++k) out *= z;
  return out;
}

// Symmetric-power matrix of a 2x2 complex matrix: rows/cols indexed from
// highest weight down, entries polynomial in the four entries of g.
Eigen::MatrixXcd sl2_sym_power(int tj, const Eigen::Matrix2cd& g) {
  if (tj < 0 || tj > kMaxTwiceSpin)
    throw std::invalid_argument("irrep_matrix: twice_spin outside [0, 60]");
  const int d = tj + 1;
  const std::complex<double> a = g(0, 0), b = g(0, 1), c = g(1, 0), dd = g(1, 1);
  const Eigen::MatrixXd& bin = binomials();
  Eigen::MatrixXcd D(d, d);
  for (int row = 0; row < d; ++row) {
    const int pp = tj - row;  // j + m', m' = j - row
    const int qp = row;       // j - m'
    for (int col = 0; col < d; ++col) {
      const int p = tj - col;  // j + m
      const int q = col;       // j - m
      const double norm = std::exp(0.5 * (std::lgamma(pp + 1.0) + std::lgamma(qp + 1.0) -
                                          std::lgamma(p + 1.0) - std::lgamma(q + 1.0)));
      std::complex<double> acc{0.0, 0.0};
      const int k_lo = std::max(0, pp - q);
      const int k_hi = std::min(p, pp);
      for (int k = k_lo; k <= k_hi; ++k) {
        acc += bin(p, k) * bin(q, pp - k) * ipow(a, k) * ipow(b, pp - k) * ipow(c, p - k) *
               ipow(dd, q - pp + k);
      }
      D(row, col) = norm * acc;
    }
  }
  return D;
}

}  // namespace

IrrepLabel IrrepLabel::torus(Eigen::VectorXi m) {
  IrrepLabel l;
  l.family = Family::Torus;
  l.weight = std::move(m);
  return l;
}

IrrepLabel IrrepLabel::su2(int twice_spin) {
  if (twice_spin < 0) throw std::invalid_argument("IrrepLabel::su2: twice_spin must be >= 0");
  IrrepLabel l;
  l.family = Family::SU2;
  l.twice_spin = twice_spin;
  return l;
}

IrrepLabel IrrepLabel::trivial(const GroupSpec& spec) {
  if (spec.is_torus()) return torus(Eigen::VectorXi::Zero(spec.n));
  return su2(0);
}

bool IrrepLabel::operator==(const IrrepLabel& o) const {
  if (family != o.family) return false;
  if (family == Family::SU2) return twice_spin == o.twice_spin;
  return weight.size() == o.weight.size() && weight == o.weight;
}

bool label_less(const IrrepLabel& a, const IrrepLabel& b) {
  if (a.family == Family::SU2) return a.twice_spin < b.twice_spin;
  const double ca = a.weight.cast<double>().squaredNorm();
  const double cb = b.weight.cast<double>().squaredNorm();
  if (ca != cb) return ca < cb;
  return std::lexicographical_compare(a.weight.begin(), a.weight.end(), b.weight.begin(),
                                      b.weight.end());
}

bool MatrixElementIndexLess::operator()(const MatrixElementIndex& a,
                                        const MatrixElementIndex& b) const {
  if (!(a.label == b.label)) return label_less(a.label, b.label);
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

int irrep_dim(const IrrepLabel& label) {
  return label.family == Family::SU2 ? label.twice_spin + 1 : 1;
}

double casimir(const GroupSpec& spec, const IrrepLabel& label) {
  if (spec.is_torus()) return label.weight.cast<double>().squaredNorm();
  const double j = 0.5 * label.twice_spin;
  return spec.root_slope * spec.root_slope * j * (j + 1.0);
}

double matrix_element_growth_rate(const GroupSpec& spec, const IrrepLabel& label) {
  if (spec.is_torus()) return label.weight.cast<double>().norm();
  return 0.5 * label.twice_spin * spec.root_slope;
}

std::vector<IrrepLabel> enumerate_irreps(const GroupSpec& spec, double cutoff) {
  if (cutoff < 0.0) throw std::invalid_argument("enumerate_irreps: cutoff must be >= 0");
  std::vector<IrrepLabel> out;
  if (spec.is_torus()) {
    const int box = static_cast<int>(std::floor(std::sqrt(cutoff)));
    Eigen::VectorXi m = Eigen::VectorXi::Constant(spec.n, -box);
    while (true) {
      if (m.cast<double>().squaredNorm() <= cutoff) out.push_back(IrrepLabel::torus(m));
      int axis = 0;
      while (axis < spec.n && m[axis] == box) m[axis++] = -box;
      if (axis == spec.n) break;
      ++m[axis];
    }
    std::sort(out.begin(), out.end(), [&](const IrrepLabel& a, const IrrepLabel& b) {
      const double ca = casimir(spec, a), cb = casimir(spec, b);
      if (ca != cb) return ca < cb;
      return label_less(a, b);
    });
  } else {
    for (int tj = 0;; ++tj) {
      if (casimir(spec, IrrepLabel::su2(tj)) > cutoff) break;
      out.push_back(IrrepLabel::su2(tj));
    }
  }
  return out;
}

Eigen::MatrixXcd irrep_matrix(const IrrepLabel& label, const ComplexGroupPoint& g) {
  if (label.family != g.family)
    throw std::invalid_argument("irrep_matrix: label/point family mismatch");
  if (label.family == Family::Torus) {
    std::complex<double> phase{0.0, 0.0};
    for (int k = 0; k < label.weight.size(); ++k)
      phase += static_cast<double>(label.weight[k]) * g.angles[k];
    Eigen::MatrixXcd out(1, 1);
    out(0, 0) = std::exp(std::complex<double>(0.0, 1.0) * phase);
    return out;
  }
  return sl2_sym_power(label.twice_spin, g.m);
}

Eigen::MatrixXcd irrep_matrix(const IrrepLabel& label, const GroupPoint& x) {
  if (label.family == Family::Torus) {
    ComplexGroupPoint g = ComplexGroupPoint::torus(x.angles.cast<std::complex<double>>());
    return irrep_matrix(label, g);
  }
  return sl2_sym_power(label.twice_spin, x.u);
}

std::complex<double> matrix_element(const MatrixElementIndex& idx, const ComplexGroupPoint& g) {
  const int d = irrep_dim(idx.label);
  if (idx.i < 1 || idx.i > d || idx.j < 1 || idx.j > d)
    throw std::invalid_argument("matrix_element: index outside representation dimension");
  return irrep_matrix(idx.label, g)(idx.i - 1, idx.j - 1);
}

std::complex<double> character(const IrrepLabel& label, const ComplexGroupPoint& g) {
  return irrep_matrix(label, g).trace();
}

double representation_homomorphism_residual(const IrrepLabel& label,
                                            const ComplexGroupPoint& g1,
                                            const ComplexGroupPoint& g2) {
  ComplexGroupPoint prod;
  if (g1.family == Family::Torus)
    prod = ComplexGroupPoint::torus(g1.angles + g2.angles);
  else
    prod = ComplexGroupPoint::su2(g1.m * g2.m);
  const Eigen::MatrixXcd lhs = irrep_matrix(label, prod);
  const Eigen::MatrixXcd rhs = irrep_matrix(label, g1) * irrep_matrix(label, g2);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace cstlab
