// Acceptance battery: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "cstlab/cst.hpp"
#include "cstlab/quantization.hpp"
#include "cstlab/suites.hpp"
#include "cstlab/util.hpp"

using namespace cstlab;

namespace {

int g_failures = 0;

void report(int criterion, const char* label, bool pass, double observed, double bound,
            double seconds) {
  std::printf("criterion %2d %-38s %s  (max %.3e vs %.1e, %.1fs)\n", criterion, label,
              pass ? "PASS" : "FAIL", observed, bound, seconds);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<MatrixElementIndex> basis_for_labels(const std::vector<IrrepLabel>& labels) {
  std::vector<MatrixElementIndex> basis;
  for (const IrrepLabel& l : labels) {
    const int d = irrep_dim(l);
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) basis.push_back({l, i, j});
  }
  return basis;
}

struct FamilySetup {
  GroupSpec spec;
  QuadratureRule rule;
  double rep_cutoff = 0.0;
};

FamilySetup make_torus() {
  FamilySetup fs{GroupSpec::torus(1), {}, 6.0};
  GridSpec g;
  g.points_per_angle = 32;
  g.radial_nodes = 288;  // [-R, R] axis rule must resolve the narrowest Gaussian
  g.max_growth_rate = pair_growth_rate(fs.spec, fs.rep_cutoff);
  fs.rule = build_rule(fs.spec, g, 2.0);  // widest Gaussian in the batteries: hbar0 / s_min
  return fs;
}

FamilySetup make_su2() {
  FamilySetup fs{GroupSpec::su2(), {}, 6.0};  // c <= 6 covers j <= 2
  GridSpec g;
  g.euler_alpha_points = 12;
  g.euler_gamma_points = 24;
  g.legendre_beta_nodes = 12;
  g.angular_sphere_rule = 8;
  g.radial_nodes = 160;
  g.max_growth_rate = pair_growth_rate(fs.spec, fs.rep_cutoff);
  fs.rule = build_rule(fs.spec, g, 2.0);
  return fs;
}

}  // namespace

int main() {
  const FamilySetup torus = make_torus();
  const FamilySetup su2 = make_su2();
  const std::vector<const FamilySetup*> families{&torus, &su2};

  // 1: total nu mass
  {
    Timer t;
    double worst = 0.0;
    for (const FamilySetup* fs : families) {
      const std::vector<IrrepLabel> triv{IrrepLabel::trivial(fs->spec)};
      for (double hbar : {0.25, 0.5, 1.0}) {
        const Eigen::MatrixXcd g = hl2_gram(fs->rule, fs->spec, triv, hbar);
        worst = std::max(worst, std::abs(g(0, 0).real() - 1.0));
      }
    }
    report(1, "measure normalization", worst <= 1e-8, worst, 1e-8, t.seconds());
  }

  // 2: nu-orthogonality
  {
    Timer t;
    double worst = 0.0;
    for (const FamilySetup* fs : families) {
      const CertifyReport rep = certify(fs->rule, fs->spec, fs->rep_cutoff, 1e-6, {0.25, 1.0});
      worst = std::max({worst, rep.max_nu_err, rep.max_schur_err, rep.max_mass_err});
    }
    report(2, "nu-orthogonality", worst <= 1e-6, worst, 1e-6, t.seconds());
  }

  // 3: Hall unitarity
  {
    Timer t;
    double worst = 0.0;
    std::mt19937 rng(311);
    for (const FamilySetup* fs : families) {
      const auto labels = enumerate_irreps(fs->spec, fs->rep_cutoff);
      const auto basis = basis_for_labels(labels);
      for (double hbar : {0.25, 1.0}) {
        const Eigen::MatrixXcd gram = hl2_gram(fs->rule, fs->spec, labels, hbar);
        for (int trial = 0; trial < 10; ++trial) {
          const PeterWeylVector f = random_band_limited(fs->spec, fs->rep_cutoff, rng);
          const PeterWeylVector F = cst_apply(fs->spec, hbar, f);
          const double nu_norm = std::sqrt(pair_through_gram(basis, gram, F, F).real());
          worst = std::max(worst, std::abs(nu_norm / f.l2_norm() - 1.0));
        }
      }
    }
    report(3, "Hall unitarity", worst <= 1e-6, worst, 1e-6, t.seconds());
  }

  // 4: spectral vs convolution
  {
    Timer t;
    double worst = 0.0;
    std::mt19937 rng(313);
    for (const FamilySetup* fs : families) {
      const double hbar = 1.0;
      const double growth_r = 0.6;
      const double kernel_cut = heat_series_cutoff(fs->spec, hbar, growth_r);
      GridSpec kg;
      if (fs->spec.is_torus()) {
        kg.points_per_angle =
            2 * static_cast<int>(std::ceil(std::sqrt(kernel_cut) + std::sqrt(fs->rep_cutoff))) + 8;
      } else {
        const double a2 = fs->spec.root_slope * fs->spec.root_slope;
        const double jmax = 0.5 * (std::sqrt(1.0 + 4.0 * kernel_cut / a2) - 1.0) +
                            0.5 * (std::sqrt(1.0 + 4.0 * fs->rep_cutoff / a2) - 1.0);
        const int band = static_cast<int>(std::ceil(2.0 * jmax));
        kg.euler_alpha_points = band + 6;
        kg.euler_gamma_points = 2 * band + 8;
        kg.legendre_beta_nodes = band + 4;
      }
      kg.radial_nodes = 2;
      const QuadratureRule krule = build_rule(fs->spec, kg, 1.0);
      const PeterWeylVector f = random_band_limited(fs->spec, fs->rep_cutoff, rng);
      const PeterWeylVector F = cst_apply(fs->spec, hbar, f);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      std::normal_distribution<double> gauss;
      for (int p = 0; p < 20; ++p) {
        ComplexGroupPoint g = [&] {
          if (fs->spec.is_torus()) {
            Eigen::VectorXcd z(1);
            z[0] = std::complex<double>(2.0 * M_PI * uni(rng), growth_r * (2.0 * uni(rng) - 1.0));
            return ComplexGroupPoint::torus(z);
          }
          Eigen::Vector3d y{gauss(rng), gauss(rng), gauss(rng)};
          y *= growth_r * uni(rng) / y.norm();
          return compose_complex(
              su2_from_euler(2.0 * M_PI * uni(rng), M_PI * uni(rng), 4.0 * M_PI * uni(rng)), 1.0,
              AlgebraPoint{y});
        }();
        const std::complex<double> spectral = F.evaluate_on_KC(g);
        const std::complex<double> conv = cst_convolution_at(krule, fs->spec, hbar, f, g, growth_r);
        worst = std::max(worst, std::abs(spectral - conv) / (1.0 + std::abs(spectral)));
      }
    }
    report(4, "spectral vs convolution CST", worst <= 1e-6, worst, 1e-6, t.seconds());
  }

  // 5: transport laws
  {
    Timer t;
    double law_worst = 0.0, norm_worst = 0.0;
    std::mt19937 rng(317);
    for (const FamilySetup* fs : families) {
      const PeterWeylVector F = random_band_limited(fs->spec, fs->rep_cutoff, rng);
      const PeterWeylVector same = parallel_transport_H(fs->spec, 0.25, 0.25, F);
      const PeterWeylVector two = parallel_transport_H(
          fs->spec, 0.5, 1.0, parallel_transport_H(fs->spec, 0.25, 0.5, F));
      const PeterWeylVector one = parallel_transport_H(fs->spec, 0.25, 1.0, F);
      const PeterWeylVector round =
          parallel_transport_H(fs->spec, 1.0, 0.25, parallel_transport_H(fs->spec, 0.25, 1.0, F));
      for (const auto& [idx, c] : F.coeff) {
        law_worst = std::max(law_worst, std::abs(same.get(idx) - c) / std::abs(c));
        law_worst = std::max(law_worst, std::abs(round.get(idx) - c) / std::abs(c));
        law_worst =
            std::max(law_worst, std::abs(two.get(idx) - one.get(idx)) / std::abs(one.get(idx)));
      }
      const auto labels = enumerate_irreps(fs->spec, fs->rep_cutoff);
      const auto basis = basis_for_labels(labels);
      const Eigen::MatrixXcd g1 = hl2_gram(fs->rule, fs->spec, labels, 0.25);
      const Eigen::MatrixXcd g2 = hl2_gram(fs->rule, fs->spec, labels, 1.0);
      const double n1 = std::sqrt(pair_through_gram(basis, g1, F, F).real());
      const double n2 = std::sqrt(pair_through_gram(basis, g2, one, one).real());
      norm_worst = std::max(norm_worst, std::abs(n2 / n1 - 1.0));
    }
    report(5, "transport laws", law_worst <= 1e-14 && norm_worst <= 1e-8,
           std::max(law_worst, norm_worst), 1e-8, t.seconds());
  }

  // 6: quantum connection equivalence
  {
    Timer t;
    double torus_worst = 0.0, su2_worst = 0.0;
    for (double s : {0.5, 1.0, 2.0}) {
      for (const CheckResult& c :
           connection_battery(torus.rule, torus.spec, s, 0.5, 6.0, 1.0))
        torus_worst = std::max(torus_worst, c.rel_err);
      for (const CheckResult& c : connection_battery(su2.rule, su2.spec, s, 0.5, 2.0, 1.0))
        su2_worst = std::max(su2_worst, c.rel_err);
    }
    // torus diagonal against the closed-form Gaussian oracle
    for (int m : {1, 2}) {
      for (double s : {1.0, 2.0}) {
        const double hbar0 = 0.5, hbar = s * hbar0;
        PeterWeylVector mode;
        mode.spec = torus.spec;
        Eigen::VectorXi w(1);
        w[0] = m;
        mode.set({IrrepLabel::torus(w), 1, 1}, {1.0, 0.0});
        QuantumSection sec;
        sec.s = s;
        sec.hbar0 = hbar0;
        sec.F = mode;
        const double direct = delta_Q_pairing_direct(torus.rule, sec, sec).real();
        const double closed = std::pow(s, -0.5) * hbar0 * 0.5 * m * m * std::sqrt(M_PI * hbar) *
                              std::exp(m * m * hbar);
        torus_worst = std::max(torus_worst, std::abs(direct / closed - 1.0));
      }
    }
    report(6, "quantum connection equivalence", torus_worst <= 1e-8 && su2_worst <= 1e-5,
           std::max(torus_worst, su2_worst), 1e-5, t.seconds());
  }

  // 7: horizontality = heat equation
  {
    Timer t;
    bool ok = true;
    double worst_ratio_err = 0.0;
    std::mt19937 rng(331);
    for (const FamilySetup* fs : families) {
      const double hbar0 = 0.8;
      const PeterWeylVector base = random_band_limited(fs->spec, fs->rep_cutoff, rng);
      const auto transported = [&](double s) {
        PeterWeylVector v = base;
        for (auto& [idx, c] : v.coeff)
          c *= std::exp(-0.5 * s * hbar0 * casimir(fs->spec, idx.label));
        return v;
      };
      const double r1 = horizontality_residual(fs->spec, hbar0, transported, 1.0, 1e-2);
      const double r2 = horizontality_residual(fs->spec, hbar0, transported, 1.0, 5e-3);
      const double ratio = r1 / r2;
      ok = ok && ratio >= 3.5 && ratio <= 4.5;
      worst_ratio_err = std::max(worst_ratio_err, std::abs(ratio - 4.0));
      const auto constant = [&](double) { return base; };
      const double rc = horizontality_residual(fs->spec, hbar0, constant, 1.0, 1e-2);
      ok = ok && rc >= 1e3 * r1;
    }
    report(7, "horizontality heat equation", ok, worst_ratio_err, 0.5, t.seconds());
  }

  // 8: S-isomorphism unitarity and intertwining
  {
    Timer t;
    double torus_worst = 0.0, su2_worst = 0.0;
    std::mt19937 rng(337);
    for (const FamilySetup* fs : families) {
      double& worst = fs->spec.is_torus() ? torus_worst : su2_worst;
      const double hbar0 = 0.5;
      const double cut = fs->spec.is_torus() ? 6.0 : 2.0;
      const PeterWeylVector f = random_band_limited(fs->spec, cut, rng);
      for (double s : {0.5, 1.0, 2.0}) {
        const QuantumSection sec = s_isomorphism(fs->spec, hbar0, s, f);
        const NormReport rep = quantum_norm(fs->rule, sec);
        const double hl2 = std::sqrt(inner_HL2_spectral(fs->spec, s * hbar0, f, f).real());
        worst = std::max(worst, std::abs(rep.direct / hl2 - 1.0));
      }
      // intertwining: transported-then-wrapped equals wrapped-then-evolved
      const double s1 = 0.5, s2 = 2.0;
      const PeterWeylVector moved = parallel_transport_H(fs->spec, s1 * hbar0, s2 * hbar0, f);
      for (const auto& [idx, c] : f.coeff) {
        const std::complex<double> evolved =
            c * std::exp(-0.5 * (s2 - s1) * hbar0 * casimir(fs->spec, idx.label));
        worst = std::max(worst, std::abs(moved.get(idx) - evolved) / std::abs(evolved));
      }
      // and the wrapped norms agree across the move (quadrature on both ends)
      const NormReport before = quantum_norm(fs->rule, s_isomorphism(fs->spec, hbar0, s1, f));
      const NormReport after = quantum_norm(fs->rule, s_isomorphism(fs->spec, hbar0, s2, moved));
      worst = std::max(worst, std::abs(after.direct / before.direct - 1.0));
    }
    report(8, "S-isomorphism unitarity", torus_worst <= 1e-8 && su2_worst <= 1e-5,
           std::max(torus_worst, su2_worst), 1e-5, t.seconds());
  }

  // 9: constant-bookkeeping density identity
  {
    Timer t;
    double worst = 0.0;
    std::mt19937 rng(347);
    std::uniform_real_distribution<double> us(0.3, 1.5);
    std::uniform_real_distribution<double> uh(0.8, 1.6);
    std::normal_distribution<double> gauss(0.0, 0.8);
    for (const FamilySetup* fs : families) {
      for (int trial = 0; trial < 10000; ++trial) {
        Eigen::VectorXd y(fs->spec.n);
        for (int k = 0; k < fs->spec.n; ++k) y[k] = gauss(rng);
        worst = std::max(worst,
                         density_identity_residual(fs->spec, us(rng), uh(rng), AlgebraPoint{y}));
      }
    }
    report(9, "density identity", worst <= 1e-14, worst, 1e-14, t.seconds());
  }

  // 10: torus golden suite
  {
    Timer t;
    RunConfig cfg = RunConfig::from_file(CSTLAB_SOURCE_DIR "/configs/torus.json");
    const auto checks = run_suite("torus-golden", cfg, torus.rule);
    double worst = 0.0;
    for (const CheckResult& c : checks) worst = std::max(worst, c.rel_err);
    report(10, "torus golden suite", all_pass(checks), worst, 1e-10, t.seconds());
  }

  // 11: convergence under refinement
  {
    Timer t;
    bool ok = true;
    double worst_seen = 0.0;
    for (const char* path : {CSTLAB_SOURCE_DIR "/configs/torus.json",
                             CSTLAB_SOURCE_DIR "/configs/su2.json"}) {
      RunConfig cfg = RunConfig::from_file(path);
      for (const char* suite : {"certify", "cst"}) {
        const auto rows = convergence_table(suite, cfg, 3, !cfg.spec.is_torus());
        for (std::size_t k = 1; k < rows.size(); ++k) {
          const double prev = rows[k - 1].max_rel_err;
          const double cur = rows[k].max_rel_err;
          worst_seen = std::max(worst_seen, cur);
          if (cur > 1e-12 && cur > 1.05 * prev) ok = false;  // monotone until the floor
          if (!cfg.spec.is_torus() && std::string(suite) == "certify" && prev > 1e-12 &&
              cur > 0.1 * prev)
            ok = false;  // >= 10x decay per radial doubling
        }
      }
    }
    report(11, "convergence tables", ok, worst_seen, 1e-12, t.seconds());
  }

  std::printf("%s\n", g_failures == 0 ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES");
  return g_failures == 0 ? 0 : 1;
}
