#include "cstlab/quadrature.hpp"

#include <random>

#include "cstlab/cst.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cstlab;

namespace {

GridSpec torus_grid() {
  GridSpec g;
  g.points_per_angle = 32;
  // the torus radial factor spans [-R, R], so narrow Gaussians (small hbar)
  // need roughly twice the node count of a half-line rule
  g.radial_nodes = 192;
  g.radial_truncation_sigmas = 12.0;
  return g;
}

GridSpec su2_grid() {
  GridSpec g;
  g.euler_alpha_points = 10;
  g.euler_gamma_points = 20;
  g.legendre_beta_nodes = 8;
  g.angular_sphere_rule = 8;
  g.radial_nodes = 64;
  g.radial_truncation_sigmas = 12.0;
  return g;
}

IrrepLabel tl(int m) {
  Eigen::VectorXi w(1);
  w[0] = m;
  return IrrepLabel::torus(w);
}

}  // namespace

TEST_CASE("gauss_legendre exactness") {
  Eigen::VectorXd x, w;
  gauss_legendre(6, -1.0, 3.0, x, w);
  CHECK(w.sum() == doctest::Approx(4.0).epsilon(1e-14));
  // degree-11 monomial integrated exactly by 6 nodes
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) acc += w[i] * std::pow(x[i], 11);
  CHECK(acc == doctest::Approx((std::pow(3.0, 12) - 1.0) / 12.0).epsilon(1e-13));
  CHECK_THROWS(gauss_legendre(0, 0.0, 1.0, x, w));
}

TEST_CASE("pair growth rate") {
  CHECK(pair_growth_rate(GroupSpec::torus(1), 4.5) == doctest::Approx(4.0));
  const GroupSpec su2 = GroupSpec::su2();
  CHECK(pair_growth_rate(su2, 2.0) == doctest::Approx(2.0 + su2.root_slope));
}

TEST_CASE("torus K factor") {
  const GroupSpec t1 = GroupSpec::torus(1);
  GridSpec g = torus_grid();
  g.points_per_angle = 8;
  g.max_growth_rate = pair_growth_rate(t1, 4.0);
  const QuadratureRule rule = build_rule(t1, g, 1.0);
  CHECK(rule.k_weights.sum() == doctest::Approx(1.0).epsilon(1e-15));

  const auto mode = [](int m) {
    return [m](const GroupPoint& x) {
      return std::exp(std::complex<double>(0.0, m * x.angles[0]));
    };
  };
  CHECK(std::abs(inner_L2K(rule, mode(0), mode(1))) < 1e-15);
  CHECK(std::abs(inner_L2K(rule, mode(2), mode(-1))) < 1e-14);
  CHECK(std::abs(inner_L2K(rule, mode(0), mode(0)) - 1.0) < 1e-15);
  CHECK(std::abs(inner_L2K(rule, mode(2), mode(2)) - 1.0) < 1e-14);
}

TEST_CASE("su2 K factor: Haar mass and Schur") {
  const GroupSpec su2 = GroupSpec::su2();
  GridSpec g = su2_grid();
  g.max_growth_rate = pair_growth_rate(su2, 2.0);
  const QuadratureRule rule = build_rule(su2, g, 0.5);
  CHECK(std::abs(rule.k_weights.sum() - 1.0) < 1e-13);

  const auto d11 = [](const GroupPoint& x) {
    return matrix_element({IrrepLabel::su2(1), 1, 1}, compose_complex(x, 1.0, AlgebraPoint{Eigen::Vector3d::Zero()}));
  };
  // Schur: integral of |D^{1/2}_{11}|^2 = 1/d = 1/2; exact Euler-angle value.
  CHECK(std::abs(inner_L2K(rule, d11, d11) - 0.5) < 1e-13);
  const auto e11 = [&](const GroupPoint& x) { return std::sqrt(2.0) * d11(x); };
  CHECK(std::abs(inner_L2K(rule, e11, e11) - 1.0) < 1e-13);
}

TEST_CASE("schur gram is the identity") {
  const GroupSpec su2 = GroupSpec::su2();
  GridSpec g = su2_grid();
  g.max_growth_rate = pair_growth_rate(su2, 2.0);
  const QuadratureRule rule = build_rule(su2, g, 0.5);
  const auto labels = enumerate_irreps(su2, 2.0);
  const Eigen::MatrixXcd sg = schur_gram(rule, su2, labels);
  CHECK((sg - Eigen::MatrixXcd::Identity(sg.rows(), sg.cols())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("inner_HL2 torus") {
  const GroupSpec t1 = GroupSpec::torus(1);
  GridSpec g = torus_grid();
  g.max_growth_rate = pair_growth_rate(t1, 9.0);
  const QuadratureRule rule = build_rule(t1, g, 0.3);

  const HoloFn one = [](const ComplexGroupPoint&) { return std::complex<double>(1.0, 0.0); };
  CHECK(std::abs(inner_HL2(rule, t1, 0.3, one, one) - 1.0) < 1e-10);

  const HoloFn m2 = [](const ComplexGroupPoint& z) {
    return std::exp(std::complex<double>(0.0, 2.0) * z.angles[0]);
  };
  CHECK(std::abs(inner_HL2(rule, t1, 0.3, m2, m2) - std::exp(1.2)) < 1e-9 * std::exp(1.2));

  CHECK_THROWS(inner_HL2(rule, t1, -1.0, one, one));
  // truncation guard: the rule was built for hbar_ref = 0.3
  CHECK_THROWS(inner_HL2(rule, t1, 25.0, one, one));
}

TEST_CASE("inner_HL2 su2 defining element") {
  const GroupSpec su2 = GroupSpec::su2();
  GridSpec g = su2_grid();
  g.max_growth_rate = pair_growth_rate(su2, 0.8);  // j = 1/2 battery
  const QuadratureRule rule = build_rule(su2, g, 0.5);

  const HoloFn d11 = [](const ComplexGroupPoint& gp) {
    return matrix_element({IrrepLabel::su2(1), 1, 1}, gp);
  };
  const double expect = std::exp(0.5 * 0.75) / 2.0;
  const std::complex<double> got = inner_HL2(rule, su2, 0.5, d11, d11);
  CHECK(std::abs(got - expect) < 1e-8 * expect);

  const HoloFn one = [](const ComplexGroupPoint&) { return std::complex<double>(1.0, 0.0); };
  CHECK(std::abs(inner_HL2(rule, su2, 0.5, one, one) - 1.0) < 1e-9);
}

TEST_CASE("inner_quantum identities") {
  const GroupSpec t1 = GroupSpec::torus(1);
  GridSpec g = torus_grid();
  g.max_growth_rate = pair_growth_rate(t1, 9.0);
  const double hbar0 = 0.5;
  // rule must carry the widest Gaussian in the battery: hbar0 / s_min
  const QuadratureRule rule = build_rule(t1, g, hbar0 / 0.5);

  const HoloFn one = [](const ComplexGroupPoint&) { return std::complex<double>(1.0, 0.0); };
  for (double s : {0.5, 1.0, 2.0}) {
    const double a_s = std::sqrt(M_PI * hbar0);  // rho = 0 on the torus
    CHECK(std::abs(inner_quantum(rule, t1, s, hbar0, one, one) - a_s) < 1e-9);

    // mode ratio e^{s hbar0 m^2}
    const HoloFn m3 = [](const ComplexGroupPoint& z) {
      return std::exp(std::complex<double>(0.0, 3.0) * z.angles[0]);
    };
    const std::complex<double> q = inner_quantum(rule, t1, s, hbar0, m3, m3);
    const double ratio = std::exp(s * hbar0 * 9.0);
    CHECK(std::abs(q / a_s - ratio) < 1e-8 * ratio);

    // core cross-check: inner_quantum == a_s * inner_HL2 at hbar = s hbar0
    std::mt19937 rng(61);
    PeterWeylVector f = random_band_limited(t1, 9.0, rng);
    PeterWeylVector h = random_band_limited(t1, 9.0, rng);
    const HoloFn F = [&](const ComplexGroupPoint& z) { return f.evaluate_on_KC(z); };
    const HoloFn G = [&](const ComplexGroupPoint& z) { return h.evaluate_on_KC(z); };
    const std::complex<double> direct = inner_quantum(rule, t1, s, hbar0, F, G);
    const std::complex<double> via_nu = a_s * inner_HL2(rule, t1, s * hbar0, F, G);
    CHECK(std::abs(direct - via_nu) < 1e-8 * std::abs(via_nu));
  }
  CHECK_THROWS(inner_quantum(rule, t1, -1.0, hbar0, one, one));
}

TEST_CASE("hl2_gram matches direct quadrature") {
  const GroupSpec su2 = GroupSpec::su2();
  GridSpec g = su2_grid();
  g.max_growth_rate = pair_growth_rate(su2, 0.8);
  const QuadratureRule rule = build_rule(su2, g, 0.5);
  const std::vector<IrrepLabel> labels = {IrrepLabel::trivial(su2), IrrepLabel::su2(1)};
  const Eigen::MatrixXcd gram = hl2_gram(rule, su2, labels, 0.5);
  REQUIRE(gram.rows() == 5);

  // entry of e_{1/2,11} against itself: normalized frame, so d * e^{h c} / d
  const double expect = std::exp(0.5 * 0.75);
  CHECK(std::abs(gram(1, 1) - expect) < 1e-8 * expect);

  // spot-check one entry against the direct product-rule integral
  const HoloFn d12 = [](const ComplexGroupPoint& gp) {
    return std::sqrt(2.0) * matrix_element({IrrepLabel::su2(1), 1, 2}, gp);
  };
  const std::complex<double> direct = inner_HL2(rule, su2, 0.5, d12, d12);
  CHECK(std::abs(gram(2, 2) - direct) < 1e-12 * std::abs(direct));
}

TEST_CASE("certify torus") {
  const GroupSpec t1 = GroupSpec::torus(1);
  GridSpec g = torus_grid();
  g.max_growth_rate = pair_growth_rate(t1, 6.0);
  const QuadratureRule rule = build_rule(t1, g, 1.0);
  const CertifyReport rep = certify(rule, t1, 6.0, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.max_schur_err < 1e-12);
  CHECK(rep.max_mass_err < 1e-9);
}

TEST_CASE("certify su2 and refinement monotonicity") {
  const GroupSpec su2 = GroupSpec::su2();
  GridSpec coarse = su2_grid();
  coarse.radial_nodes = 24;
  coarse.angular_sphere_rule = 6;
  coarse.max_growth_rate = pair_growth_rate(su2, 2.0);

  const QuadratureRule rc = build_rule(su2, coarse, 1.0);
  const CertifyReport rep_c = certify(rc, su2, 2.0, 1e-2, {0.25, 1.0});

  GridSpec fine = coarse;
  fine.radial_nodes = 64;
  fine.angular_sphere_rule = 8;
  const QuadratureRule rf = build_rule(su2, fine, 1.0);
  const CertifyReport rep_f = certify(rf, su2, 2.0, 1e-6, {0.25, 1.0});

  CHECK(rep_f.pass);
  CHECK(rep_f.max_nu_err < rep_c.max_nu_err);
  CHECK(rep_f.max_nu_err < 1e-7);
}

TEST_CASE("build_rule errors name the failing factor") {
  const GroupSpec su2 = GroupSpec::su2();
  GridSpec g = su2_grid();
  g.euler_alpha_points = 1;
  CHECK_THROWS_WITH_AS(build_rule(su2, g, 1.0),
                       doctest::Contains("euler_alpha_points"), std::invalid_argument);
  g = su2_grid();
  g.radial_nodes = 1;
  CHECK_THROWS_WITH_AS(build_rule(su2, g, 1.0), doctest::Contains("radial_nodes"),
                       std::invalid_argument);
  CHECK_THROWS(build_rule(su2, su2_grid(), 0.0));
}
