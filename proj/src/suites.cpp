#include "cstlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cstlab/util.hpp"

namespace cstlab {

namespace {

using Complex = std::complex<double>;
using nlohmann::json;

double require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string("config: ") + name + " must be positive");
  return v;
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

double probe_cutoff(const RunConfig& cfg) {
  // connection probes: c <= 6 on the torus, j <= 1 for SU(2)
  const double cap = cfg.spec.is_torus() ? 6.0 : 2.0;
  return std::min(cfg.rep_cutoff, cap);
}

// --- individual suites -----------------------------------------------------

std::vector<CheckResult> suite_certify(const RunConfig& cfg, const QuadratureRule& rule) {
  std::vector<CheckResult> checks;
  const CertifyReport schur = certify(rule, cfg.spec, cfg.rep_cutoff, cfg.tol_certify,
                                      {cfg.hbar_values.front()});
  checks.push_back(
      make_residual_check("certify/schur_orthogonality", schur.max_schur_err, cfg.tol_certify));
  for (double hbar : cfg.hbar_values) {
    const CertifyReport rep = certify(rule, cfg.spec, cfg.rep_cutoff, cfg.tol_certify, {hbar});
    checks.push_back(make_residual_check("certify/nu_mass[hbar=" + fp17(hbar) + "]",
                                         rep.max_mass_err, cfg.tol_certify));
    checks.push_back(make_residual_check("certify/nu_orthogonality[hbar=" + fp17(hbar) + "]",
                                         rep.max_nu_err, cfg.tol_certify));
  }
  return checks;
}

std::vector<CheckResult> suite_cst(const RunConfig& cfg, const QuadratureRule& rule) {
  std::vector<CheckResult> checks;
  const std::vector<IrrepLabel> labels = enumerate_irreps(cfg.spec, cfg.rep_cutoff);
  const std::vector<MatrixElementIndex> basis = basis_for_labels(labels);

  // Hall unitarity on random band-limited data, nu-norm by quadrature.
  std::mt19937 rng(2026);
  for (double hbar : cfg.hbar_values) {
    const Eigen::MatrixXcd gram = hl2_gram(rule, cfg.spec, labels, hbar);
    for (int trial = 0; trial < 8; ++trial) {
      const PeterWeylVector f = random_band_limited(cfg.spec, cfg.rep_cutoff, rng);
      const PeterWeylVector F = cst_apply(cfg.spec, hbar, f);
      const double nu_norm = std::sqrt(pair_through_gram(basis, gram, F, F).real());
      checks.push_back(make_check("cst/hall_unitarity[hbar=" + fp17(hbar) + ",trial=" +
                                      std::to_string(trial) + "]",
                                  nu_norm, f.l2_norm(), cfg.tol_unitarity));
    }
  }

  // Spectral vs convolution at deterministic K_C points; the K grid must
  // resolve the truncated heat kernel's bandwidth, so build a dedicated rule.
  const double hbar = *std::max_element(cfg.hbar_values.begin(), cfg.hbar_values.end());
  const double growth_r = 0.6;
  const double kernel_cut = heat_series_cutoff(cfg.spec, hbar, growth_r);
  GridSpec kgrid = cfg.grid;
  if (cfg.spec.is_torus()) {
    const int band = static_cast<int>(std::ceil(std::sqrt(kernel_cut) + std::sqrt(cfg.rep_cutoff)));
    kgrid.points_per_angle = 2 * band + 8;
  } else {
    const double a2 = cfg.spec.root_slope * cfg.spec.root_slope;
    const double jmax = 0.5 * (std::sqrt(1.0 + 4.0 * kernel_cut / a2) - 1.0) +
                        0.5 * (std::sqrt(1.0 + 4.0 * cfg.rep_cutoff / a2) - 1.0);
    const int band = static_cast<int>(std::ceil(2.0 * jmax));
    kgrid.euler_alpha_points = band + 6;
    kgrid.euler_gamma_points = 2 * band + 8;
    kgrid.legendre_beta_nodes = band + 4;
  }
  kgrid.radial_nodes = 2;  // algebra factor unused by the convolution
  const QuadratureRule krule = build_rule(cfg.spec, kgrid, rule.hbar_ref);
  const PeterWeylVector f = random_band_limited(cfg.spec, cfg.rep_cutoff, rng);
  const PeterWeylVector F = cst_apply(cfg.spec, hbar, f);
  for (int p = 0; p < 4; ++p) {
    ComplexGroupPoint g = [&] {
      if (cfg.spec.is_torus()) {
        Eigen::VectorXcd z(cfg.spec.n);
        for (int d = 0; d < cfg.spec.n; ++d)
          z[d] = Complex(0.4 + 1.3 * p + 0.7 * d, 0.1 * (p + 1) + 0.05 * d);
        return ComplexGroupPoint::torus(z);
      }
      const GroupPoint x = su2_from_euler(0.3 + 0.9 * p, 0.4 + 0.5 * p, 1.1 * p);
      Eigen::Vector3d y{0.1 * p, 0.2, 0.3 - 0.05 * p};
      return compose_complex(x, 1.0, AlgebraPoint{y});
    }();
    const Complex spectral = F.evaluate_on_KC(g);
    const Complex conv = cst_convolution_at(krule, cfg.spec, hbar, f, g, growth_r);
    checks.push_back(make_residual_check("cst/convolution[point=" + std::to_string(p) + "]",
                                         std::abs(spectral - conv) / (1.0 + std::abs(spectral)),
                                         cfg.tol_unitarity));
  }
  return checks;
}

std::vector<CheckResult> suite_transport(const RunConfig& cfg, const QuadratureRule& rule) {
  std::vector<CheckResult> checks;
  std::mt19937 rng(4099);
  const PeterWeylVector F = random_band_limited(cfg.spec, cfg.rep_cutoff, rng);
  const double h1 = *std::min_element(cfg.hbar_values.begin(), cfg.hbar_values.end());
  const double h2 = *std::max_element(cfg.hbar_values.begin(), cfg.hbar_values.end());
  const double hm = 0.5 * (h1 + h2);

  // groupoid laws, exact on coefficients
  double law_err = 0.0;
  const PeterWeylVector same = parallel_transport_H(cfg.spec, h1, h1, F);
  const PeterWeylVector two = parallel_transport_H(cfg.spec, hm, h2,
                                                   parallel_transport_H(cfg.spec, h1, hm, F));
  const PeterWeylVector one = parallel_transport_H(cfg.spec, h1, h2, F);
  const PeterWeylVector round =
      parallel_transport_H(cfg.spec, h2, h1, parallel_transport_H(cfg.spec, h1, h2, F));
  for (const auto& [idx, c] : F.coeff) {
    const double scale = std::abs(c);
    law_err = std::max(law_err, std::abs(same.get(idx) - c) / scale);
    law_err = std::max(law_err, std::abs(round.get(idx) - c) / scale);
    law_err = std::max(law_err, std::abs(two.get(idx) - one.get(idx)) /
                                    std::max(std::abs(one.get(idx)), 1e-300));
  }
  checks.push_back(make_residual_check("transport/groupoid_laws", law_err, 1e-14));

  // fiber-norm preservation, both norms by quadrature
  const std::vector<IrrepLabel> labels = enumerate_irreps(cfg.spec, cfg.rep_cutoff);
  const std::vector<MatrixElementIndex> basis = basis_for_labels(labels);
  const Eigen::MatrixXcd g1 = hl2_gram(rule, cfg.spec, labels, h1);
  const Eigen::MatrixXcd g2 = hl2_gram(rule, cfg.spec, labels, h2);
  const double n1 = std::sqrt(pair_through_gram(basis, g1, F, F).real());
  const double n2 = std::sqrt(pair_through_gram(basis, g2, one, one).real());
  checks.push_back(make_check("transport/fiber_norm_preservation", n2, n1, 1e-8));
  return checks;
}

std::vector<CheckResult> suite_connection(const RunConfig& cfg, const QuadratureRule& rule) {
  std::vector<CheckResult> checks;
  const double cut = probe_cutoff(cfg);
  for (double s : cfg.s_values) {
    double worst = 0.0;
    for (const CheckResult& c : connection_battery(rule, cfg.spec, s, cfg.hbar0, cut,
                                                   cfg.tol_connection))
      worst = std::max(worst, c.rel_err);
    checks.push_back(make_residual_check("connection/pairing_battery[s=" + fp17(s) + "]", worst,
                                         cfg.tol_connection));
  }

  // S-isomorphism: norm preservation of the wrapped datum at each s
  std::mt19937 rng(8191);
  const PeterWeylVector f = random_band_limited(cfg.spec, cut, rng);
  for (double s : cfg.s_values) {
    const QuantumSection sec = s_isomorphism(cfg.spec, cfg.hbar0, s, f);
    const NormReport rep = quantum_norm(rule, sec);
    const double hl2 = std::sqrt(inner_HL2_spectral(cfg.spec, s * cfg.hbar0, f, f).real());
    checks.push_back(
        make_check("connection/s_isomorphism_norm[s=" + fp17(s) + "]", rep.direct, hl2,
                   cfg.tol_connection));
  }

  // pointwise constant-bookkeeping identity
  std::uniform_real_distribution<double> us(0.3, 1.5);
  std::normal_distribution<double> gauss(0.0, 0.8);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd y(cfg.spec.n);
    for (int k = 0; k < cfg.spec.n; ++k) y[k] = gauss(rng);
    worst = std::max(worst,
                     density_identity_residual(cfg.spec, us(rng), us(rng), AlgebraPoint{y}));
  }
  checks.push_back(make_residual_check("connection/density_identity", worst, 1e-13));
  return checks;
}

std::vector<CheckResult> suite_horizontality(const RunConfig& cfg, const QuadratureRule&) {
  std::vector<CheckResult> checks;
  std::mt19937 rng(16411);
  const PeterWeylVector base = random_band_limited(cfg.spec, cfg.rep_cutoff, rng);
  const auto transported = [&](double s) {
    PeterWeylVector v = base;
    for (auto& [idx, c] : v.coeff)
      c *= std::exp(-0.5 * s * cfg.hbar0 * casimir(cfg.spec, idx.label));
    return v;
  };
  const double r1 = horizontality_residual(cfg.spec, cfg.hbar0, transported, 1.0, 1e-2);
  const double r2 = horizontality_residual(cfg.spec, cfg.hbar0, transported, 1.0, 5e-3);
  checks.push_back(make_residual_check("horizontality/residual[ds=1e-2]", r1, 1e-3));
  checks.push_back(make_check("horizontality/richardson_ratio", r1 / r2, 4.0, 0.125));
  const auto constant = [&](double) { return base; };
  const double rc = horizontality_residual(cfg.spec, cfg.hbar0, constant, 1.0, 1e-2);
  checks.push_back(make_residual_check("horizontality/control_family_fails",
                                       (rc > 1e3 * std::max(r1, 1e-300)) ? 0.0 : 1.0, 0.5));
  return checks;
}

std::vector<CheckResult> suite_torus_golden(const RunConfig& cfg, const QuadratureRule&) {
  // Self-contained closed-form battery on U(1); independent of the configured
  // group so it stays a fixed golden reference.
  std::vector<CheckResult> checks;
  const GroupSpec t1 = GroupSpec::torus(1);
  const double tol = 1e-10;
  const double hbar = 0.5, hbar0 = 0.5, s = 1.0;

  Eigen::VectorXd y(1);
  y[0] = 1.7;
  checks.push_back(make_check("golden/eta", eta(t1, AlgebraPoint{y}), 1.0, tol));
  checks.push_back(make_check("golden/c_hbar", c_hbar(t1, hbar),
                              std::pow(M_PI * hbar, -0.5), tol));
  checks.push_back(
      make_check("golden/a_factor", a_factor(t1, s, hbar0), std::sqrt(M_PI * hbar0), tol));

  GridSpec grid;
  grid.points_per_angle = 32;
  grid.radial_nodes = 192;
  grid.max_growth_rate = pair_growth_rate(t1, 6.0);
  const QuadratureRule rule = build_rule(t1, grid, 1.0);

  const std::vector<IrrepLabel> labels = enumerate_irreps(t1, 6.0);
  const Eigen::MatrixXcd gram = hl2_gram(rule, t1, labels, hbar);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    const int m = labels[a].weight[0];
    checks.push_back(make_check("golden/nu_orthogonality[m=" + std::to_string(m) + "]",
                                gram(a, a).real(), std::exp(hbar * m * m), tol));
  }

  // CST multiplier and deltaQ eigenvalue per mode
  const std::vector<MatrixElementIndex> basis = basis_for_labels(labels);
  const Eigen::MatrixXcd qgram = quantum_gram(rule, t1, labels, s, hbar0);
  for (int m : {1, 2}) {
    PeterWeylVector mode;
    mode.spec = t1;
    Eigen::VectorXi w(1);
    w[0] = m;
    mode.set({IrrepLabel::torus(w), 1, 1}, {1.0, 0.0});
    const PeterWeylVector Fm = cst_apply(t1, hbar, mode);
    checks.push_back(make_check("golden/cst_multiplier[m=" + std::to_string(m) + "]",
                                Fm.get({IrrepLabel::torus(w), 1, 1}).real(),
                                std::exp(-0.5 * hbar * m * m), tol));

    QuantumSection sec;
    sec.s = s;
    sec.hbar0 = hbar0;
    sec.F = mode;
    const Complex pairing = delta_Q_pairing_direct(rule, sec, sec);
    const Complex norm_sq = pair_through_gram(basis, qgram, mode, mode);
    checks.push_back(make_check("golden/deltaQ_eigenvalue[m=" + std::to_string(m) + "]",
                                (pairing / norm_sq).real(), 0.5 * hbar0 * m * m, tol));
  }

  // heat kernel against a directly coded theta sum
  for (double th : {0.3, 2.1}) {
    Eigen::VectorXcd z(1);
    z[0] = th;
    double theta_sum = 1.0;
    for (int m = 1; m < 200; ++m)
      theta_sum += 2.0 * std::exp(-0.5 * hbar * m * m) * std::cos(m * th);
    checks.push_back(make_check("golden/heat_kernel[theta=" + fp17(th) + "]",
                                heat_kernel(t1, hbar, ComplexGroupPoint::torus(z)).real(),
                                theta_sum, tol));
  }
  return checks;
}

double suite_error(const std::string& suite, const RunConfig& cfg, const QuadratureRule& rule) {
  double worst = 0.0;
  if (suite == "certify") {
    const CertifyReport rep = certify(rule, cfg.spec, cfg.rep_cutoff, 1.0, cfg.hbar_values);
    worst = std::max({rep.max_schur_err, rep.max_nu_err, rep.max_mass_err});
  } else if (suite == "cst") {
    std::mt19937 rng(2026);
    const std::vector<IrrepLabel> labels = enumerate_irreps(cfg.spec, cfg.rep_cutoff);
    const std::vector<MatrixElementIndex> basis = basis_for_labels(labels);
    for (double hbar : cfg.hbar_values) {
      const Eigen::MatrixXcd gram = hl2_gram(rule, cfg.spec, labels, hbar);
      for (int trial = 0; trial < 4; ++trial) {
        const PeterWeylVector f = random_band_limited(cfg.spec, cfg.rep_cutoff, rng);
        const PeterWeylVector F = cst_apply(cfg.spec, hbar, f);
        const double nu_norm = std::sqrt(pair_through_gram(basis, gram, F, F).real());
        worst = std::max(worst, std::abs(nu_norm / f.l2_norm() - 1.0));
      }
    }
  } else if (suite == "transport") {
    for (const CheckResult& c : suite_transport(cfg, rule)) worst = std::max(worst, c.rel_err);
  } else if (suite == "connection") {
    for (const CheckResult& c :
         connection_battery(rule, cfg.spec, 1.0, cfg.hbar0, probe_cutoff(cfg), 1.0))
      worst = std::max(worst, c.rel_err);
  } else {
    throw std::invalid_argument("convergence_table: unsupported suite '" + suite + "'");
  }
  return worst;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"certify",    "cst",           "transport",
                                              "connection", "horizontality", "torus-golden"};
  return names;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  const json in = json::parse(text);
  RunConfig cfg;
  const std::string family = in.at("group").at("family").get<std::string>();
  if (family == "torus")
    cfg.spec = GroupSpec::torus(in.at("group").at("n").get<int>());
  else if (family == "su2")
    cfg.spec = GroupSpec::su2();
  else
    throw std::invalid_argument("config: unknown group family '" + family + "'");

  if (in.contains("hbar0")) cfg.hbar0 = in.at("hbar0").get<double>();
  require_positive(cfg.hbar0, "hbar0");
  if (in.contains("hbar_values")) cfg.hbar_values = in.at("hbar_values").get<std::vector<double>>();
  if (cfg.hbar_values.empty()) throw std::invalid_argument("config: hbar_values must be nonempty");
  for (double h : cfg.hbar_values) require_positive(h, "hbar_values entry");
  if (in.contains("s_values")) cfg.s_values = in.at("s_values").get<std::vector<double>>();
  if (cfg.s_values.empty()) throw std::invalid_argument("config: s_values must be nonempty");
  for (double s : cfg.s_values) require_positive(s, "s_values entry");
  if (in.contains("rep_cutoff")) cfg.rep_cutoff = in.at("rep_cutoff").get<double>();
  require_positive(cfg.rep_cutoff, "rep_cutoff");

  if (in.contains("grid")) {
    const json& g = in.at("grid");
    if (g.contains("points_per_angle")) cfg.grid.points_per_angle = g.at("points_per_angle");
    if (g.contains("euler_alpha_points")) cfg.grid.euler_alpha_points = g.at("euler_alpha_points");
    if (g.contains("euler_gamma_points")) cfg.grid.euler_gamma_points = g.at("euler_gamma_points");
    if (g.contains("legendre_beta_nodes")) cfg.grid.legendre_beta_nodes = g.at("legendre_beta_nodes");
    if (g.contains("angular_sphere_rule")) cfg.grid.angular_sphere_rule = g.at("angular_sphere_rule");
    if (g.contains("radial_nodes")) cfg.grid.radial_nodes = g.at("radial_nodes");
    if (g.contains("radial_truncation_sigmas"))
      cfg.grid.radial_truncation_sigmas = g.at("radial_truncation_sigmas");
  }
  if (in.contains("tolerances")) {
    const json& t = in.at("tolerances");
    if (t.contains("certify")) cfg.tol_certify = t.at("certify");
    if (t.contains("unitarity")) cfg.tol_unitarity = t.at("unitarity");
    if (t.contains("connection")) cfg.tol_connection = t.at("connection");
  }
  require_positive(cfg.tol_certify, "tolerances.certify");
  require_positive(cfg.tol_unitarity, "tolerances.unitarity");
  require_positive(cfg.tol_connection, "tolerances.connection");
  if (in.contains("output_dir")) cfg.output_dir = in.at("output_dir").get<std::string>();

  if (!in.contains("suites"))
    throw std::invalid_argument("config: suites list is required");
  cfg.suites = in.at("suites").get<std::vector<std::string>>();
  if (cfg.suites.empty()) throw std::invalid_argument("config: suites list must be nonempty");
  for (const std::string& s : cfg.suites) {
    const auto& known = known_suites();
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw std::invalid_argument("config: unknown suite '" + s + "'");
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

QuadratureRule config_rule(const RunConfig& cfg) {
  double hbar_ref = *std::max_element(cfg.hbar_values.begin(), cfg.hbar_values.end());
  for (double s : cfg.s_values) {
    hbar_ref = std::max(hbar_ref, cfg.hbar0 / s);
    hbar_ref = std::max(hbar_ref, cfg.hbar0 * s);
  }
  GridSpec grid = cfg.grid;
  grid.max_growth_rate = pair_growth_rate(cfg.spec, cfg.rep_cutoff);
  return build_rule(cfg.spec, grid, hbar_ref);
}

std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg,
                                   const QuadratureRule& rule) {
  if (name == "certify") return suite_certify(cfg, rule);
  if (name == "cst") return suite_cst(cfg, rule);
  if (name == "transport") return suite_transport(cfg, rule);
  if (name == "connection") return suite_connection(cfg, rule);
  if (name == "horizontality") return suite_horizontality(cfg, rule);
  if (name == "torus-golden") return suite_torus_golden(cfg, rule);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

std::vector<ConvergenceRow> convergence_table(const std::string& suite, const RunConfig& cfg,
                                              int levels, bool refine_radial_only) {
  std::vector<ConvergenceRow> rows;
  const int base_radial = std::max(32, cfg.grid.radial_nodes / 2);
  const int base_sphere = std::max(4, cfg.grid.angular_sphere_rule / 2);
  for (int level = 0; level < levels; ++level) {
    GridSpec grid = cfg.grid;
    grid.radial_nodes = base_radial << level;
    if (!refine_radial_only) grid.angular_sphere_rule = base_sphere << level;
    grid.max_growth_rate = pair_growth_rate(cfg.spec, cfg.rep_cutoff);
    RunConfig level_cfg = cfg;
    level_cfg.grid = grid;

    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureRule rule = config_rule(level_cfg);
    ConvergenceRow row;
    row.level = level;
    row.nodes_total = rule.total_nodes();
    row.max_rel_err = suite_error(suite, level_cfg, rule);
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cstlab
