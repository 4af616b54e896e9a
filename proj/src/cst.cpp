#include "cstlab/cst.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "cstlab/util.hpp"

namespace cstlab {

namespace {

using Complex = std::complex<double>;
using nlohmann::json;

// Labels grouped with their coefficient blocks for evaluation.
struct LabelBlock {
  IrrepLabel label;
  std::vector<std::pair<MatrixElementIndex, Complex>> entries;
};

std::vector<LabelBlock> group_by_label(const PeterWeylVector& v) {
  std::vector<LabelBlock> blocks;
  for (const auto& [idx, c] : v.coeff) {
    if (blocks.empty() || !(blocks.back().label == idx.label))
      blocks.push_back({idx.label, {}});
    blocks.back().entries.emplace_back(idx, c);
  }
  return blocks;
}

PeterWeylVector map_coefficients(const PeterWeylVector& v,
                                 const std::function<double(double)>& factor_of_casimir) {
  PeterWeylVector out;
  out.spec = v.spec;
  out.cutoff = v.cutoff;
  for (const auto& [idx, c] : v.coeff)
    out.coeff.emplace(idx, factor_of_casimir(casimir(v.spec, idx.label)) * c);
  return out;
}

}  // namespace

void PeterWeylVector::set(const MatrixElementIndex& idx, Complex value) {
  const int d = irrep_dim(idx.label);
  if (idx.i < 1 || idx.i > d || idx.j < 1 || idx.j > d)
    throw std::invalid_argument("PeterWeylVector::set: index outside representation dimension");
  coeff[idx] = value;
  cutoff = std::max(cutoff, casimir(spec, idx.label));
}

Complex PeterWeylVector::get(const MatrixElementIndex& idx) const {
  const auto it = coeff.find(idx);
  return it == coeff.end() ? Complex{0.0, 0.0} : it->second;
}

std::vector<IrrepLabel> PeterWeylVector::labels() const {
  std::vector<IrrepLabel> out;
  for (const auto& [idx, c] : coeff)
    if (out.empty() || !(out.back() == idx.label)) out.push_back(idx.label);
  return out;
}

double PeterWeylVector::l2_norm() const {
  std::vector<double> sq;
  sq.reserve(coeff.size());
  for (const auto& [idx, c] : coeff) sq.push_back(std::norm(c));
  return std::sqrt(pairwise_sum(sq));
}

double PeterWeylVector::max_growth_rate() const {
  double g = 0.0;
  for (const IrrepLabel& l : labels())
    g = std::max(g, matrix_element_growth_rate(spec, l));
  return g;
}

Complex PeterWeylVector::evaluate_on_KC(const ComplexGroupPoint& g) const {
  std::vector<Complex> terms;
  for (const LabelBlock& block : group_by_label(*this)) {
    const Eigen::MatrixXcd D = irrep_matrix(block.label, g);
    const double root_d = std::sqrt(double(irrep_dim(block.label)));
    for (const auto& [idx, c] : block.entries)
      terms.push_back(c * root_d * D(idx.i - 1, idx.j - 1));
  }
  return pairwise_sum(terms);
}

Complex PeterWeylVector::evaluate_on_K(const GroupPoint& x) const {
  if (spec.is_torus())
    return evaluate_on_KC(ComplexGroupPoint::torus(x.angles.cast<Complex>()));
  return evaluate_on_KC(ComplexGroupPoint::su2(x.u));
}

double heat_series_cutoff(const GroupSpec& spec, double hbar, double growth_r) {
  if (hbar <= 0.0) throw std::invalid_argument("heat_series_cutoff: hbar must be positive");
  // Walk the casimir ladder until the per-shell bound stays below 1e-18 of
  // the accumulated series.
  double acc = 0.0;
  double cutoff = 0.0;
  int quiet = 0;
  for (int k = 0; quiet < 3; ++k) {
    double c, shell_bound;
    if (spec.is_torus()) {
      c = double(k) * k;  // smallest casimir at max-norm k
      const double count = std::pow(2.0 * k + 1.0, spec.n);
      shell_bound = count * std::exp(-0.5 * hbar * c + k * std::sqrt(double(spec.n)) * growth_r);
    } else {
      const double j = 0.5 * k;
      c = spec.root_slope * spec.root_slope * j * (j + 1.0);
      const double d = k + 1.0;
      shell_bound = d * d * std::exp(-0.5 * hbar * c + j * spec.root_slope * growth_r);
    }
    if (k > 0 && shell_bound < 1e-18 * (1.0 + acc))
      ++quiet;
    else {
      quiet = 0;
      cutoff = c;
    }
    acc += shell_bound;
    if (k > 100000) throw std::runtime_error("heat_series_cutoff: ladder failed to converge");
  }
  return cutoff;
}

Complex heat_kernel(const GroupSpec& spec, double hbar, const ComplexGroupPoint& g,
                    double growth_r, double cutoff) {
  if (hbar <= 0.0) throw std::invalid_argument("heat_kernel: hbar must be positive");
  const double needed = heat_series_cutoff(spec, hbar, growth_r);
  if (cutoff < 0.0) {
    cutoff = needed;
  } else if (cutoff < needed) {
    // Tail bound beyond the configured cutoff.
    double tail = 0.0;
    for (const IrrepLabel& l : enumerate_irreps(spec, needed)) {
      const double c = casimir(spec, l);
      if (c <= cutoff) continue;
      const double d = irrep_dim(l);
      tail += d * d * std::exp(-0.5 * hbar * c + matrix_element_growth_rate(spec, l) * growth_r);
    }
    if (tail > 1e-12)
      throw std::runtime_error("heat_kernel: tail bound violated, dropped tail " + fp17(tail) +
                               " at cutoff " + fp17(cutoff));
  }
  std::vector<Complex> terms;
  if (spec.is_torus()) {
    for (const IrrepLabel& l : enumerate_irreps(spec, cutoff))
      terms.push_back(std::exp(-0.5 * hbar * casimir(spec, l)) * character(l, g));
  } else {
    // Characters are Chebyshev polynomials of the trace: chi_j = U_{2j}(t/2),
    // U_{k+1} = t U_k - U_{k-1}.
    const Complex t = g.m.trace();
    Complex u_prev{0.0, 0.0};  // U_{-1}
    Complex u{1.0, 0.0};       // U_0
    const double a2 = spec.root_slope * spec.root_slope;
    for (int tj = 0;; ++tj) {
      const double j = 0.5 * tj;
      const double c = a2 * j * (j + 1.0);
      if (c > cutoff) break;
      terms.push_back(double(tj + 1) * std::exp(-0.5 * hbar * c) * u);
      const Complex next = t * u - u_prev;
      u_prev = u;
      u = next;
    }
  }
  return pairwise_sum(terms);
}

PeterWeylVector cst_apply(const GroupSpec& spec, double hbar, const PeterWeylVector& f) {
  if (hbar <= 0.0) throw std::invalid_argument("cst_apply: hbar must be positive");
  return map_coefficients(f, [hbar](double c) { return std::exp(-0.5 * hbar * c); });
}

PeterWeylVector cst_invert(const GroupSpec& spec, double hbar, const PeterWeylVector& F) {
  if (hbar <= 0.0) throw std::invalid_argument("cst_invert: hbar must be positive");
  const double guard = 1e12 * F.l2_norm();
  for (const auto& [idx, c] : F.coeff) {
    const double amp = std::exp(0.5 * hbar * casimir(F.spec, idx.label)) * std::abs(c);
    if (amp > guard)
      throw std::runtime_error("cst_invert: amplified coefficient " + fp17(amp) +
                               " exceeds 1e12 times the input norm");
  }
  return map_coefficients(F, [hbar](double c) { return std::exp(0.5 * hbar * c); });
}

PeterWeylVector parallel_transport_H(const GroupSpec& spec, double hbar1, double hbar2,
                                     const PeterWeylVector& F) {
  if (hbar1 <= 0.0 || hbar2 <= 0.0)
    throw std::invalid_argument("parallel_transport_H: hbar must be positive");
  const double dh = hbar2 - hbar1;
  return map_coefficients(F, [dh](double c) { return std::exp(-0.5 * dh * c); });
}

PeterWeylVector delta_H_generator(const GroupSpec& spec, const PeterWeylVector& F) {
  return map_coefficients(F, [](double c) { return 0.5 * c; });
}

Complex cst_convolution_at(const QuadratureRule& rule, const GroupSpec& spec, double hbar,
                           const PeterWeylVector& f, const ComplexGroupPoint& g,
                           double growth_r) {
  const double cutoff = heat_series_cutoff(spec, hbar, growth_r);
  const std::size_t nk = rule.k_nodes.size();
  std::vector<Complex> terms(nk);
  parallel_for(nk, [&](std::size_t ix) {
    const GroupPoint& x = rule.k_nodes[ix];
    const ComplexGroupPoint shifted = complex_left_multiply(group_inverse(x), g);
    terms[ix] = rule.k_weights[ix] * f.evaluate_on_K(x) *
                heat_kernel(spec, hbar, shifted, growth_r, cutoff);
  });
  return pairwise_sum(terms);
}

Complex inner_L2K_spectral(const PeterWeylVector& f, const PeterWeylVector& g) {
  std::vector<Complex> terms;
  for (const auto& [idx, c] : f.coeff) terms.push_back(std::conj(c) * g.get(idx));
  return pairwise_sum(terms);
}

Complex inner_HL2_spectral(const GroupSpec& spec, double hbar, const PeterWeylVector& F,
                           const PeterWeylVector& G) {
  std::vector<Complex> terms;
  for (const auto& [idx, c] : F.coeff)
    terms.push_back(std::conj(c) * G.get(idx) * std::exp(hbar * casimir(spec, idx.label)));
  return pairwise_sum(terms);
}

Complex pair_through_gram(const std::vector<MatrixElementIndex>& basis,
                          const Eigen::MatrixXcd& gram, const PeterWeylVector& F,
                          const PeterWeylVector& G) {
  const int n = static_cast<int>(basis.size());
  Eigen::VectorXcd vf = Eigen::VectorXcd::Zero(n), vg = Eigen::VectorXcd::Zero(n);
  std::size_t seen_f = 0, seen_g = 0;
  for (int k = 0; k < n; ++k) {
    if (auto it = F.coeff.find(basis[k]); it != F.coeff.end()) {
      vf[k] = it->second;
      ++seen_f;
    }
    if (auto it = G.coeff.find(basis[k]); it != G.coeff.end()) {
      vg[k] = it->second;
      ++seen_g;
    }
  }
  if (seen_f != F.coeff.size() || seen_g != G.coeff.size())
    throw std::invalid_argument("pair_through_gram: vector support outside the battery basis");
  return vf.dot(gram * vg);  // Eigen dot conjugates the left argument
}

PeterWeylVector random_band_limited(const GroupSpec& spec, double cutoff, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  PeterWeylVector v;
  v.spec = spec;
  for (const MatrixElementIndex& idx : matrix_element_basis(spec, cutoff))
    v.set(idx, Complex{gauss(rng), gauss(rng)});
  v.cutoff = cutoff;
  return v;
}

std::string pw_to_json(const PeterWeylVector& v) {
  json out;
  out["group"] = {{"family", v.spec.family_name()}, {"n", v.spec.is_torus() ? v.spec.n : 3}};
  out["cutoff"] = v.cutoff;
  json entries = json::array();
  for (const auto& [idx, c] : v.coeff) {
    json e;
    if (v.spec.is_torus()) {
      std::vector<int> m(idx.label.weight.begin(), idx.label.weight.end());
      e["label"] = m;
    } else {
      e["label"] = idx.label.twice_spin;
    }
    e["i"] = idx.i;
    e["j"] = idx.j;
    e["re"] = c.real();
    e["im"] = c.imag();
    entries.push_back(e);
  }
  out["entries"] = std::move(entries);
  return out.dump(2);
}

PeterWeylVector pw_from_json(const std::string& text) {
  const json in = json::parse(text);
  const std::string family = in.at("group").at("family").get<std::string>();
  PeterWeylVector v;
  if (family == "torus")
    v.spec = GroupSpec::torus(in.at("group").at("n").get<int>());
  else if (family == "su2")
    v.spec = GroupSpec::su2();
  else
    throw std::invalid_argument("pw_from_json: unknown family '" + family + "'");
  for (const json& e : in.at("entries")) {
    MatrixElementIndex idx;
    if (v.spec.is_torus()) {
      const std::vector<int> m = e.at("label").get<std::vector<int>>();
      if (static_cast<int>(m.size()) != v.spec.n)
        throw std::invalid_argument("pw_from_json: weight length does not match group dimension");
      idx.label = IrrepLabel::torus(Eigen::Map<const Eigen::VectorXi>(m.data(), m.size()));
    } else {
      idx.label = IrrepLabel::su2(e.at("label").get<int>());
    }
    idx.i = e.at("i").get<int>();
    idx.j = e.at("j").get<int>();
    v.set(idx, Complex{e.at("re").get<double>(), e.at("im").get<double>()});
  }
  if (in.contains("cutoff")) v.cutoff = std::max(v.cutoff, in.at("cutoff").get<double>());
  return v;
}

}  // namespace cstlab
