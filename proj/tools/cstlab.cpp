// cstlab: batch driver for the verification suites and transforms.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cstlab/suites.hpp"
#include "cstlab/util.hpp"

namespace fs = std::filesystem;
using namespace cstlab;

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void write_report_json(const std::string& path,
                       const std::vector<std::pair<std::string, std::vector<CheckResult>>>& suites) {
  std::ofstream out(path);
  out << "{\n  \"suites\": [\n";
  for (std::size_t s = 0; s < suites.size(); ++s) {
    out << "    {\n      \"name\": \"" << json_escape(suites[s].first) << "\",\n"
        << "      \"checks\": [\n";
    const auto& checks = suites[s].second;
    for (std::size_t k = 0; k < checks.size(); ++k) {
      const CheckResult& c = checks[k];
      out << "        {\"name\": \"" << json_escape(c.name) << "\", \"lhs\": " << fp17(c.lhs)
          << ", \"rhs\": " << fp17(c.rhs) << ", \"abs_err\": " << fp17(c.abs_err)
          << ", \"rel_err\": " << fp17(c.rel_err) << ", \"tolerance\": " << fp17(c.tolerance)
          << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
          << (k + 1 < checks.size() ? "," : "") << "\n";
    }
    out << "      ]\n    }" << (s + 1 < suites.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
}

int cmd_verify(const std::string& config_path) {
  const RunConfig cfg = RunConfig::from_file(config_path);
  const QuadratureRule rule = config_rule(cfg);
  std::vector<std::pair<std::string, std::vector<CheckResult>>> results;
  bool all_ok = true;
  for (const std::string& name : cfg.suites) {
    std::vector<CheckResult> checks = run_suite(name, cfg, rule);
    const bool ok = all_pass(checks);
    all_ok = all_ok && ok;
    std::size_t worst = 0;
    for (std::size_t k = 0; k < checks.size(); ++k)
      if (checks[k].rel_err > checks[worst].rel_err) worst = k;
    std::printf("%-14s %4zu checks  max_rel_err %-24s %s\n", name.c_str(), checks.size(),
                fp17(checks[worst].rel_err).c_str(), ok ? "PASS" : "FAIL");
    for (const CheckResult& c : checks)
      if (!c.pass)
        std::printf("  FAIL %s: lhs=%s rhs=%s rel_err=%s tol=%s\n", c.name.c_str(),
                    fp17(c.lhs).c_str(), fp17(c.rhs).c_str(), fp17(c.rel_err).c_str(),
                    fp17(c.tolerance).c_str());
    results.emplace_back(name, std::move(checks));
  }
  fs::create_directories(cfg.output_dir);
  write_report_json((fs::path(cfg.output_dir) / "report.json").string(), results);
  std::printf("%s\n", all_ok ? "ALL PASS" : "FAILURES PRESENT");
  return all_ok ? 0 : 1;
}

int cmd_table(const std::string& config_path) {
  const RunConfig cfg = RunConfig::from_file(config_path);
  fs::create_directories(cfg.output_dir);
  for (const std::string& name : cfg.suites) {
    if (name == "horizontality" || name == "torus-golden") continue;  // grid-free suites
    const bool radial_only = !cfg.spec.is_torus();
    const auto rows = convergence_table(name, cfg, 4, radial_only);
    const fs::path path = fs::path(cfg.output_dir) / ("table_" + name + ".csv");
    std::ofstream out(path);
    out << "level,nodes_total,max_rel_err,runtime_ms\n";
    for (const ConvergenceRow& r : rows)
      out << r.level << "," << r.nodes_total << "," << fp17(r.max_rel_err) << ","
          << fp17(r.runtime_ms) << "\n";
    std::printf("wrote %s\n", path.string().c_str());
  }
  return 0;
}

int cmd_transform(const std::string& config_path, const std::string& input_path, double hbar,
                  const std::string& output_path) {
  const RunConfig cfg = RunConfig::from_file(config_path);
  std::ifstream in(input_path);
  if (!in) throw std::runtime_error("transform: cannot open '" + input_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  const PeterWeylVector f = pw_from_json(text.str());
  if (f.spec.family != cfg.spec.family || f.spec.n != cfg.spec.n)
    throw std::runtime_error("transform: input group does not match the configured group");
  const PeterWeylVector F = cst_apply(f.spec, hbar, f);

  // deterministic evaluation probes along a fixed (x, Y) schedule
  std::string samples = "  \"samples\": [\n";
  for (int p = 0; p < 4; ++p) {
    ComplexGroupPoint g = [&] {
      if (f.spec.is_torus()) {
        Eigen::VectorXcd z(f.spec.n);
        for (int d = 0; d < f.spec.n; ++d)
          z[d] = std::complex<double>(0.5 * (p + 1) + 0.3 * d, 0.2 * p);
        return ComplexGroupPoint::torus(z);
      }
      Eigen::Vector3d y{0.1 * p, 0.15, 0.2};
      return compose_complex(su2_from_euler(0.7 * p, 0.5, 0.3 * p), 1.0, AlgebraPoint{y});
    }();
    const std::complex<double> v = F.evaluate_on_KC(g);
    samples += "    {\"probe\": " + std::to_string(p) + ", \"re\": " + fp17(v.real()) +
               ", \"im\": " + fp17(v.imag()) + "}" + (p < 3 ? "," : "") + "\n";
  }
  samples += "  ]\n";

  std::string body = pw_to_json(F);
  // splice the samples array into the top-level object
  body.insert(body.rfind('}'), ",\n" + samples);
  std::ofstream out(output_path);
  out << body << "\n";
  std::printf("wrote %s\n", output_path.c_str());
  return 0;
}

int cmd_kernel(const std::string& config_path, double hbar, const std::string& output_path) {
  const RunConfig cfg = RunConfig::from_file(config_path);
  std::ofstream out(output_path);
  out << "kind,coordinate,value\n";
  if (cfg.spec.is_torus()) {
    for (int k = 0; k < 64; ++k) {
      Eigen::VectorXcd z(cfg.spec.n);
      for (int d = 0; d < cfg.spec.n; ++d) z[d] = 2.0 * M_PI * k / 64.0;
      out << "heat_kernel," << fp17(2.0 * M_PI * k / 64.0) << ","
          << fp17(heat_kernel(cfg.spec, hbar, ComplexGroupPoint::torus(z)).real()) << "\n";
    }
  } else {
    for (int k = 0; k < 64; ++k) {
      const double th = 2.0 * M_PI * k / 64.0;
      const GroupPoint x = su2_from_euler(0.0, th, 0.0);
      out << "heat_kernel," << fp17(th) << ","
          << fp17(heat_kernel(cfg.spec, hbar, ComplexGroupPoint::su2(x.u)).real()) << "\n";
    }
  }
  for (int k = 0; k <= 48; ++k) {
    const double r = 4.0 * std::sqrt(hbar) * k / 48.0;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cfg.spec.n);
    y[cfg.spec.n - 1] = r;
    out << "nu_density," << fp17(r) << ","
        << fp17(nu_density_vs_liouville(cfg.spec, hbar, AlgebraPoint{y})) << "\n";
  }
  std::printf("wrote %s\n", output_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cstlab: coherent state transform verification bench"};
  app.require_subcommand(1);

  std::string config_path, input_path, output_path;
  double hbar = 1.0;

  CLI::App* verify = app.add_subcommand("verify", "run the configured verification suites");
  verify->add_option("-c,--config", config_path, "run configuration JSON")->required();

  CLI::App* table = app.add_subcommand("table", "emit convergence tables as CSV");
  table->add_option("-c,--config", config_path, "run configuration JSON")->required();

  CLI::App* transform = app.add_subcommand("transform", "apply the transform to a coefficient file");
  transform->add_option("-c,--config", config_path, "run configuration JSON")->required();
  transform->add_option("-i,--input", input_path, "input coefficient JSON")->required();
  transform->add_option("--hbar", hbar, "transform parameter")->required();
  transform->add_option("-o,--output", output_path, "output JSON path")->required();

  CLI::App* kernel = app.add_subcommand("kernel", "tabulate the heat kernel and measure density");
  kernel->add_option("-c,--config", config_path, "run configuration JSON")->required();
  kernel->add_option("--hbar", hbar, "kernel parameter")->required();
  kernel->add_option("-o,--output", output_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(config_path);
    if (*table) return cmd_table(config_path);
    if (*transform) return cmd_transform(config_path, input_path, hbar, output_path);
    if (*kernel) return cmd_kernel(config_path, hbar, output_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
