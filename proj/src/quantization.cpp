#include "cstlab/quantization.hpp"

#include <cmath>
#include <stdexcept>

#include "cstlab/util.hpp"

namespace cstlab {

namespace {

using Complex = std::complex<double>;

std::vector<IrrepLabel> merge_labels(const std::vector<IrrepLabel>& a,
                                     const std::vector<IrrepLabel>& b) {
  std::vector<IrrepLabel> out = a;
  for (const IrrepLabel& l : b) {
    bool found = false;
    for (const IrrepLabel& m : out)
      if (m == l) {
        found = true;
        break;
      }
    if (!found) out.push_back(l);
  }
  std::sort(out.begin(), out.end(), label_less);
  return out;
}

std::vector<MatrixElementIndex> basis_for_labels(const std::vector<IrrepLabel>& labels) {
  std::vector<MatrixElementIndex> basis;
  for (const IrrepLabel& l : labels) {
    const int d = irrep_dim(l);
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) basis.push_back({l, i, j});
  }
  return basis;
}

void require_same_fiber(const QuantumSection& a, const QuantumSection& b) {
  if (a.s != b.s || a.hbar0 != b.hbar0)
    throw std::invalid_argument("quantum sections live in different fibers (s, hbar0)");
}

// Radial weight of the direct heat-operator pairing against the Liouville measure, hbar = s hbar0:
// hbar0 (|Y|^2 / 2 hbar^2 - n / 4 hbar) e^{-|Y|^2 / hbar} eta(Y).
std::function<double(const AlgebraPoint&)> heat_pairing_weight(const GroupSpec& spec, double s,
                                                       double hbar0) {
  const double hbar = s * hbar0;
  const int n = spec.n;
  return [&spec, hbar, hbar0, n](const AlgebraPoint& Y) {
    const double r2 = Y.norm_sq();
    return hbar0 * (0.5 * r2 / (hbar * hbar) - 0.25 * n / hbar) * std::exp(-r2 / hbar) *
           eta(spec, Y);
  };
}

}  // namespace

double a_factor(const GroupSpec& spec, double s, double hbar0) {
  if (s <= 0.0 || hbar0 <= 0.0)
    throw std::invalid_argument("a_factor: s and hbar0 must be positive");
  return std::pow(M_PI * hbar0, 0.5 * spec.n) * std::exp(spec.weyl_vector_norm_sq * hbar0 * s);
}

Complex inner_quantum_sections(const QuadratureRule& rule, const QuantumSection& a,
                               const QuantumSection& b) {
  require_same_fiber(a, b);
  const std::vector<IrrepLabel> labels = merge_labels(a.F.labels(), b.F.labels());
  const Eigen::MatrixXcd gram = quantum_gram(rule, a.F.spec, labels, a.s, a.hbar0);
  Complex value = pair_through_gram(basis_for_labels(labels), gram, a.F, b.F);
  const double as = a_factor(a.F.spec, a.s, a.hbar0);
  if (a.a_normalized) value /= std::sqrt(as);
  if (b.a_normalized) value /= std::sqrt(as);
  return value;
}

NormReport quantum_norm(const QuadratureRule& rule, const QuantumSection& sigma) {
  NormReport report;
  report.direct = std::sqrt(std::abs(inner_quantum_sections(rule, sigma, sigma).real()));
  const double hbar = sigma.s * sigma.hbar0;
  double sq = 0.0;
  for (const auto& [idx, c] : sigma.F.coeff)
    sq += std::norm(c) * std::exp(hbar * casimir(sigma.F.spec, idx.label));
  if (!sigma.a_normalized) sq *= a_factor(sigma.F.spec, sigma.s, sigma.hbar0);
  report.spectral = std::sqrt(sq);
  return report;
}

QuantumSection delta_Q_apply(const QuantumSection& sigma) {
  QuantumSection out = sigma;
  const double rho2 = sigma.F.spec.weyl_vector_norm_sq;
  for (auto& [idx, c] : out.F.coeff)
    c *= 0.5 * sigma.hbar0 * (casimir(sigma.F.spec, idx.label) + rho2);
  return out;
}

Complex delta_Q_pairing_direct(const QuadratureRule& rule, const QuantumSection& sigma,
                               const QuantumSection& zeta) {
  require_same_fiber(sigma, zeta);
  const GroupSpec& spec = sigma.F.spec;
  const double hbar = sigma.s * sigma.hbar0;
  require_truncation(rule, hbar, hbar);
  const std::vector<IrrepLabel> labels = merge_labels(sigma.F.labels(), zeta.F.labels());
  const Eigen::MatrixXcd gram =
      weighted_gram(rule, spec, labels, 1.0, heat_pairing_weight(spec, sigma.s, sigma.hbar0));
  Complex value = std::pow(sigma.s, -0.5 * spec.n) *
                  pair_through_gram(basis_for_labels(labels), gram, sigma.F, zeta.F);
  const double as = a_factor(spec, sigma.s, sigma.hbar0);
  if (sigma.a_normalized) value /= std::sqrt(as);
  if (zeta.a_normalized) value /= std::sqrt(as);
  return value;
}

std::vector<CheckResult> connection_battery(const QuadratureRule& rule, const GroupSpec& spec,
                                            double s, double hbar0, double probe_cutoff,
                                            double tolerance) {
  const double hbar = s * hbar0;
  require_truncation(rule, hbar, hbar);
  const std::vector<IrrepLabel> labels = enumerate_irreps(spec, probe_cutoff);
  const std::vector<MatrixElementIndex> basis = basis_for_labels(labels);
  const Eigen::MatrixXcd gram =
      weighted_gram(rule, spec, labels, 1.0, heat_pairing_weight(spec, s, hbar0));
  const double pre = std::pow(s, -0.5 * spec.n);
  const double as = a_factor(spec, s, hbar0);
  const double rho2 = spec.weyl_vector_norm_sq;

  std::vector<CheckResult> checks;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const double ca = casimir(spec, basis[a].label);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double cb = casimir(spec, basis[b].label);
      const Complex lhs = pre * gram(a, b);
      const Complex rhs = (basis[a] == basis[b])
                              ? Complex{0.5 * hbar0 * (ca + rho2) * as * std::exp(hbar * ca), 0.0}
                              : Complex{0.0, 0.0};
      const double scale = as * std::exp(0.5 * hbar * (ca + cb)) * 0.5 * hbar0 *
                           std::max({ca + rho2, cb + rho2, 1.0});
      CheckResult c = make_residual_check(
          "deltaQ_pairing[" + std::to_string(a) + "," + std::to_string(b) + "]",
          std::abs(lhs - rhs) / scale, tolerance);
      c.lhs = std::abs(lhs);
      c.rhs = std::abs(rhs);
      c.abs_err = std::abs(lhs - rhs);
      checks.push_back(c);
    }
  }
  return checks;
}

double heat_pairing_residual(const QuadratureRule& rule, const GroupSpec& spec, double hbar,
                     double probe_cutoff) {
  double worst = 0.0;
  for (const CheckResult& c : connection_battery(rule, spec, 1.0, hbar, probe_cutoff, 1.0))
    worst = std::max(worst, c.rel_err);
  return worst;
}

double horizontality_residual(const GroupSpec& spec, double hbar0,
                              const std::function<PeterWeylVector(double)>& family, double s,
                              double ds) {
  if (ds <= 0.0 || s - ds <= 0.0)
    throw std::invalid_argument("horizontality_residual: need 0 < ds < s");
  const PeterWeylVector mid = family(s);
  const PeterWeylVector lo = family(s - ds);
  const PeterWeylVector hi = family(s + ds);
  double worst = 0.0;
  for (const auto& [idx, c] : mid.coeff) {
    if (std::abs(c) < 1e-300) continue;
    const Complex fd = (hi.get(idx) - lo.get(idx)) / (2.0 * ds);
    const Complex target = -0.5 * hbar0 * casimir(spec, idx.label) * c;
    worst = std::max(worst, std::abs(fd - target) / std::abs(c));
  }
  return worst;
}

QuantumSection s_isomorphism(const GroupSpec& spec, double hbar0, double s,
                             const PeterWeylVector& F) {
  if (s <= 0.0 || hbar0 <= 0.0)
    throw std::invalid_argument("s_isomorphism: s and hbar0 must be positive");
  QuantumSection sigma;
  sigma.s = s;
  sigma.hbar0 = hbar0;
  sigma.F = F;
  sigma.a_normalized = true;
  return sigma;
}

double density_identity_residual(const GroupSpec& spec, double s, double hbar0,
                                 const AlgebraPoint& Y) {
  const AlgebraPoint sY{s * Y.y};
  const double lhs = a_factor(spec, s, hbar0) * nu_density_vs_liouville(spec, s * hbar0, sY) *
                     std::pow(s, spec.n);
  const double rhs = std::exp(-s * Y.norm_sq() / hbar0) * half_form_density(spec, s, Y);
  return std::abs(lhs / rhs - 1.0);
}

}  // namespace cstlab
