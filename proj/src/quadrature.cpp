#include "cstlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "cstlab/util.hpp"

namespace cstlab {

namespace {

using Complex = std::complex<double>;

Eigen::VectorXd uniform_weights(int n) { return Eigen::VectorXd::Constant(n, 1.0 / n); }

}  // namespace

void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev start, Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = x;
    nodes[n - 1 - i] = -x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  // map [-1, 1] -> [a, b]
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
}

GridSpec GridSpec::refined(int factor) const {
  GridSpec g = *this;
  g.points_per_angle *= factor;
  g.euler_alpha_points *= factor;
  g.euler_gamma_points *= factor;
  g.legendre_beta_nodes *= factor;
  g.angular_sphere_rule *= factor;
  g.radial_nodes *= factor;
  return g;
}

double pair_growth_rate(const GroupSpec& spec, double rep_cutoff) {
  double g1 = 0.0;
  for (const IrrepLabel& l : enumerate_irreps(spec, rep_cutoff))
    g1 = std::max(g1, matrix_element_growth_rate(spec, l));
  // eta contributes one extra root slope of growth in the measure densities.
  return 2.0 * g1 + spec.root_slope;
}

QuadratureRule build_rule(const GroupSpec& spec, const GridSpec& grid, double hbar_ref) {
  if (hbar_ref <= 0.0) throw std::invalid_argument("build_rule: hbar_ref must be positive");
  QuadratureRule rule;
  rule.spec = spec;
  rule.grid = grid;
  rule.hbar_ref = hbar_ref;
  rule.r_max = grid.radial_truncation_sigmas * std::sqrt(hbar_ref) +
               0.5 * grid.max_growth_rate * hbar_ref;

  if (spec.is_torus()) {
    if (grid.points_per_angle < 2)
      throw std::invalid_argument("build_rule: torus points_per_angle must be >= 2");
    if (grid.radial_nodes < 2)
      throw std::invalid_argument("build_rule: radial_nodes must be >= 2");
    const int na = grid.points_per_angle;
    // K factor: uniform angles, exact for trigonometric polynomials below Nyquist.
    std::vector<int> idx(spec.n, 0);
    const double wk = std::pow(1.0 / na, spec.n);
    while (true) {
      Eigen::VectorXd theta(spec.n);
      for (int d = 0; d < spec.n; ++d) theta[d] = 2.0 * M_PI * idx[d] / na;
      rule.k_nodes.push_back(GroupPoint::torus(theta));
      int axis = 0;
      while (axis < spec.n && idx[axis] == na - 1) idx[axis++] = 0;
      if (axis == spec.n) break;
      ++idx[axis];
    }
    rule.k_weights = Eigen::VectorXd::Constant(rule.k_nodes.size(), wk);

    // Algebra factor: per-axis Gauss-Legendre on [-R, R].
    Eigen::VectorXd gl_x, gl_w;
    gauss_legendre(grid.radial_nodes, -rule.r_max, rule.r_max, gl_x, gl_w);
    std::vector<int> yi(spec.n, 0);
    std::vector<double> wy;
    while (true) {
      Eigen::VectorXd y(spec.n);
      double w = 1.0;
      for (int d = 0; d < spec.n; ++d) {
        y[d] = gl_x[yi[d]];
        w *= gl_w[yi[d]];
      }
      rule.y_nodes.push_back(AlgebraPoint{y});
      wy.push_back(w);
      int axis = 0;
      while (axis < spec.n && yi[axis] == grid.radial_nodes - 1) yi[axis++] = 0;
      if (axis == spec.n) break;
      ++yi[axis];
    }
    rule.y_weights = Eigen::Map<Eigen::VectorXd>(wy.data(), wy.size());
    return rule;
  }

  // SU(2)
  if (grid.euler_alpha_points < 2)
    throw std::invalid_argument("build_rule: euler_alpha_points must be >= 2");
  if (grid.euler_gamma_points < 2)
    throw std::invalid_argument("build_rule: euler_gamma_points must be >= 2");
  if (grid.legendre_beta_nodes < 1)
    throw std::invalid_argument("build_rule: legendre_beta_nodes must be >= 1");
  if (grid.radial_nodes < 2)
    throw std::invalid_argument("build_rule: radial_nodes must be >= 2");
  if (grid.angular_sphere_rule < 1)
    throw std::invalid_argument("build_rule: angular_sphere_rule must be >= 1");

  // Haar via Euler angles (alpha, beta, gamma) on [0,2pi) x [0,pi] x [0,4pi)
  // with weight sin(beta) / (16 pi^2): uniform in alpha and gamma,
  // Gauss-Legendre in cos(beta).
  Eigen::VectorXd cb, wb;
  gauss_legendre(grid.legendre_beta_nodes, -1.0, 1.0, cb, wb);
  const Eigen::VectorXd wa = uniform_weights(grid.euler_alpha_points);
  const Eigen::VectorXd wg = uniform_weights(grid.euler_gamma_points);
  std::vector<double> wk;
  for (int ia = 0; ia < grid.euler_alpha_points; ++ia) {
    const double alpha = 2.0 * M_PI * ia / grid.euler_alpha_points;
    for (int ib = 0; ib < grid.legendre_beta_nodes; ++ib) {
      const double beta = std::acos(cb[ib]);
      for (int ig = 0; ig < grid.euler_gamma_points; ++ig) {
        const double gamma = 4.0 * M_PI * ig / grid.euler_gamma_points;
        rule.k_nodes.push_back(su2_from_euler(alpha, beta, gamma));
        wk.push_back(wa[ia] * 0.5 * wb[ib] * wg[ig]);
      }
    }
  }
  rule.k_weights = Eigen::Map<Eigen::VectorXd>(wk.data(), wk.size());

  // Lebesgue on R^3: radial Gauss-Legendre on [0, R] with the r^2 Jacobian,
  // product-Gauss on the sphere.
  Eigen::VectorXd rx, rw;
  gauss_legendre(grid.radial_nodes, 0.0, rule.r_max, rx, rw);
  const int q = grid.angular_sphere_rule;
  Eigen::VectorXd ct, wt;
  gauss_legendre(q, -1.0, 1.0, ct, wt);
  const int nphi = 2 * q;
  std::vector<double> wy;
  for (int ir = 0; ir < grid.radial_nodes; ++ir) {
    for (int it = 0; it < q; ++it) {
      const double st = std::sqrt(std::max(0.0, 1.0 - ct[it] * ct[it]));
      for (int ip = 0; ip < nphi; ++ip) {
        const double phi = 2.0 * M_PI * ip / nphi;
        Eigen::VectorXd y(3);
        y << rx[ir] * st * std::cos(phi), rx[ir] * st * std::sin(phi), rx[ir] * ct[it];
        rule.y_nodes.push_back(AlgebraPoint{y});
        wy.push_back(rw[ir] * rx[ir] * rx[ir] * wt[it] * (2.0 * M_PI / nphi));
      }
    }
  }
  rule.y_weights = Eigen::Map<Eigen::VectorXd>(wy.data(), wy.size());
  return rule;
}

void require_truncation(const QuadratureRule& rule, double gaussian_scale, double growth_scale) {
  const double needed =
      8.0 * std::sqrt(gaussian_scale) + 0.5 * rule.grid.max_growth_rate * growth_scale;
  if (rule.r_max < needed)
    throw std::runtime_error("quadrature rule radial truncation R_max = " +
                             fp17(rule.r_max) + " too small; need at least " + fp17(needed));
}

std::complex<double> integrate_liouville(const QuadratureRule& rule, const PhaseSpaceFn& f) {
  const std::size_t nk = rule.k_nodes.size();
  const std::size_t ny = rule.y_nodes.size();
  std::vector<Complex> partial(nk);
  parallel_for(nk, [&](std::size_t ix) {
    std::vector<Complex> row(ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
      row[iy] = rule.y_weights[iy] * f(rule.k_nodes[ix], rule.y_nodes[iy]);
    partial[ix] = rule.k_weights[ix] * pairwise_sum(row);
  });
  return pairwise_sum(partial);
}

std::complex<double> inner_L2K(const QuadratureRule& rule, const GroupFn& f, const GroupFn& g) {
  const std::size_t nk = rule.k_nodes.size();
  std::vector<Complex> terms(nk);
  parallel_for(nk, [&](std::size_t ix) {
    terms[ix] = rule.k_weights[ix] * std::conj(f(rule.k_nodes[ix])) * g(rule.k_nodes[ix]);
  });
  return pairwise_sum(terms);
}

std::complex<double> inner_HL2(const QuadratureRule& rule, const GroupSpec& spec, double hbar,
                               const HoloFn& F, const HoloFn& G) {
  if (hbar <= 0.0) throw std::invalid_argument("inner_HL2: hbar must be positive");
  require_truncation(rule, hbar, hbar);
  return integrate_liouville(rule, [&](const GroupPoint& x, const AlgebraPoint& Y) {
    const ComplexGroupPoint g = compose_complex(x, 1.0, Y);
    return nu_density_vs_liouville(spec, hbar, Y) * std::conj(F(g)) * G(g);
  });
}

std::complex<double> inner_quantum(const QuadratureRule& rule, const GroupSpec& spec, double s,
                                   double hbar0, const HoloFn& F, const HoloFn& G) {
  if (s <= 0.0 || hbar0 <= 0.0)
    throw std::invalid_argument("inner_quantum: s and hbar0 must be positive");
  require_truncation(rule, hbar0 / s, hbar0);
  return integrate_liouville(rule, [&](const GroupPoint& x, const AlgebraPoint& Y) {
    const ComplexGroupPoint g = compose_complex(x, s, Y);
    const double w = std::exp(-s * Y.norm_sq() / hbar0) * half_form_density(spec, s, Y);
    return w * std::conj(F(g)) * G(g);
  });
}

std::vector<MatrixElementIndex> matrix_element_basis(const GroupSpec& spec, double cutoff) {
  std::vector<MatrixElementIndex> basis;
  for (const IrrepLabel& l : enumerate_irreps(spec, cutoff)) {
    const int d = irrep_dim(l);
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) basis.push_back({l, i, j});
  }
  return basis;
}

namespace {

// Pairwise K-factor grams: GK[a][b]((i,k),(i',l)) = sum_x w conj(D^a_ik) D^b_i'l,
// with (row, col) packed column-major into a d^2 vector.
std::vector<std::vector<Eigen::MatrixXcd>> k_factor_grams(
    const QuadratureRule& rule, const std::vector<IrrepLabel>& labels) {
  const std::size_t p = labels.size();
  std::vector<std::vector<Eigen::MatrixXcd>> gk(p, std::vector<Eigen::MatrixXcd>(p));
  std::vector<int> dims(p);
  for (std::size_t a = 0; a < p; ++a) dims[a] = irrep_dim(labels[a]);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      gk[a][b] = Eigen::MatrixXcd::Zero(dims[a] * dims[a], dims[b] * dims[b]);
  std::vector<Eigen::VectorXcd> vecs(p);
  for (std::size_t ix = 0; ix < rule.k_nodes.size(); ++ix) {
    for (std::size_t a = 0; a < p; ++a) {
      const Eigen::MatrixXcd D = irrep_matrix(labels[a], rule.k_nodes[ix]);
      vecs[a] = Eigen::Map<const Eigen::VectorXcd>(D.data(), D.size());
    }
    const double w = rule.k_weights[ix];
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b)
        gk[a][b].noalias() += w * vecs[a].conjugate() * vecs[b].transpose();
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < a; ++b) gk[a][b] = gk[b][a].adjoint();
  return gk;
}

std::vector<int> block_offsets(const std::vector<IrrepLabel>& labels, int& total) {
  std::vector<int> offs(labels.size());
  total = 0;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    offs[a] = total;
    total += irrep_dim(labels[a]) * irrep_dim(labels[a]);
  }
  return offs;
}

}  // namespace

Eigen::MatrixXcd schur_gram(const QuadratureRule& rule, const GroupSpec& spec,
                            const std::vector<IrrepLabel>& labels) {
  const auto gk = k_factor_grams(rule, labels);
  int total = 0;
  const std::vector<int> offs = block_offsets(labels, total);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(total, total);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    const int da = irrep_dim(labels[a]);
    for (std::size_t b = 0; b < labels.size(); ++b) {
      const int db = irrep_dim(labels[b]);
      const double norm = std::sqrt(double(da) * db);
      // K-only gram: the (i,j),(i',j') entry is GK((i,j),(i',j')).
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          for (int ip = 0; ip < db; ++ip)
            for (int jp = 0; jp < db; ++jp)
              gram(offs[a] + i * da + j, offs[b] + ip * db + jp) =
                  norm * gk[a][b](i + j * da, ip + jp * db);
    }
  }
  return gram;
}

Eigen::MatrixXcd weighted_gram(const QuadratureRule& rule, const GroupSpec& spec,
                               const std::vector<IrrepLabel>& labels, double s_compose,
                               const std::function<double(const AlgebraPoint&)>& weight) {
  const std::size_t p = labels.size();
  const auto gk = k_factor_grams(rule, labels);

  // Algebra-factor grams: S[a][b]((k,j),(l,j')) = sum_Y w W(Y) conj(A^a_kj) A^b_lj'
  // with A = D(e^{i s Y}).
  std::vector<int> dims(p);
  for (std::size_t a = 0; a < p; ++a) dims[a] = irrep_dim(labels[a]);
  std::vector<std::vector<Eigen::MatrixXcd>> sy(p, std::vector<Eigen::MatrixXcd>(p));
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      sy[a][b] = Eigen::MatrixXcd::Zero(dims[a] * dims[a], dims[b] * dims[b]);
  const GroupPoint id = GroupPoint::identity(spec);
  std::vector<Eigen::VectorXcd> vecs(p);
  for (std::size_t iy = 0; iy < rule.y_nodes.size(); ++iy) {
    const ComplexGroupPoint e = compose_complex(id, s_compose, rule.y_nodes[iy]);
    for (std::size_t a = 0; a < p; ++a) {
      const Eigen::MatrixXcd A = irrep_matrix(labels[a], e);
      vecs[a] = Eigen::Map<const Eigen::VectorXcd>(A.data(), A.size());
    }
    const double w = rule.y_weights[iy] * weight(rule.y_nodes[iy]);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b)
        sy[a][b].noalias() += w * vecs[a].conjugate() * vecs[b].transpose();
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < a; ++b) sy[a][b] = sy[b][a].adjoint();

  // Contract: matrix elements at x e^{isY} are (D(x) A(Y))_{ij}, so the full
  // product-rule gram entry is sum_{k,l} GK((i,k),(i',l)) S((k,j),(l,j')).
  int total = 0;
  const std::vector<int> offs = block_offsets(labels, total);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(total, total);
  for (std::size_t a = 0; a < p; ++a) {
    const int da = dims[a];
    for (std::size_t b = 0; b < p; ++b) {
      const int db = dims[b];
      const double norm = std::sqrt(double(da) * db);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          for (int ip = 0; ip < db; ++ip)
            for (int jp = 0; jp < db; ++jp) {
              Complex acc{0.0, 0.0};
              for (int k = 0; k < da; ++k)
                for (int l = 0; l < db; ++l)
                  acc += gk[a][b](i + k * da, ip + l * db) * sy[a][b](k + j * da, l + jp * db);
              gram(offs[a] + i * da + j, offs[b] + ip * db + jp) = norm * acc;
            }
    }
  }
  return gram;
}

Eigen::MatrixXcd hl2_gram(const QuadratureRule& rule, const GroupSpec& spec,
                          const std::vector<IrrepLabel>& labels, double hbar) {
  require_truncation(rule, hbar, hbar);
  return weighted_gram(rule, spec, labels, 1.0, [&](const AlgebraPoint& Y) {
    return nu_density_vs_liouville(spec, hbar, Y);
  });
}

Eigen::MatrixXcd quantum_gram(const QuadratureRule& rule, const GroupSpec& spec,
                              const std::vector<IrrepLabel>& labels, double s, double hbar0) {
  require_truncation(rule, hbar0 / s, hbar0);
  return weighted_gram(rule, spec, labels, s, [&](const AlgebraPoint& Y) {
    return std::exp(-s * Y.norm_sq() / hbar0) * half_form_density(spec, s, Y);
  });
}

CertifyReport certify(const QuadratureRule& rule, const GroupSpec& spec, double rep_cutoff,
                      double tolerance, const std::vector<double>& hbars) {
  CertifyReport report;
  report.tolerance = tolerance;
  const std::vector<IrrepLabel> labels = enumerate_irreps(spec, rep_cutoff);
  int total = 0;
  const std::vector<int> offs = block_offsets(labels, total);

  const Eigen::MatrixXcd sg = schur_gram(rule, spec, labels);
  report.max_schur_err = (sg - Eigen::MatrixXcd::Identity(total, total)).cwiseAbs().maxCoeff();

  for (double hbar : hbars) {
    const Eigen::MatrixXcd ng = hl2_gram(rule, spec, labels, hbar);
    Eigen::VectorXd scale(total);
    Eigen::VectorXd expected(total);
    for (std::size_t a = 0; a < labels.size(); ++a) {
      const int sz = irrep_dim(labels[a]) * irrep_dim(labels[a]);
      const double v = std::exp(hbar * casimir(spec, labels[a]));
      scale.segment(offs[a], sz).setConstant(std::sqrt(v));
      expected.segment(offs[a], sz).setConstant(v);
    }
    for (int r = 0; r < total; ++r)
      for (int c = 0; c < total; ++c) {
        const double want = (r == c) ? expected[r] : 0.0;
        const double err = std::abs(ng(r, c) - want) / (scale[r] * scale[c]);
        report.max_nu_err = std::max(report.max_nu_err, err);
      }
    // total mass = trivial-rep diagonal entry
    const IrrepLabel triv = IrrepLabel::trivial(spec);
    for (std::size_t a = 0; a < labels.size(); ++a)
      if (labels[a] == triv)
        report.max_mass_err = std::max(report.max_mass_err, std::abs(ng(offs[a], offs[a]) - 1.0));
  }
  report.pass = report.max_schur_err <= tolerance && report.max_nu_err <= tolerance &&
                report.max_mass_err <= tolerance;
  return report;
}

}  // namespace cstlab
