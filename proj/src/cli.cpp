#include "exactpde/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "exactpde/errors.hpp"
#include "exactpde/solution_spec.hpp"

namespace exactpde {

namespace {

nlohmann::json point_json(const Point& p, bool geo) {
  nlohmann::json j = {{"t", p.t}, {"x", p.x}, {"y", p.y}};
  if (!geo) j["z"] = p.z;
  return j;
}

nlohmann::json report_json(const BuiltSolution& s, const ResidualReport& r) {
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : r.equations)
    eqs.push_back({{"equation", e.equation},
                   {"max_abs", e.max_abs},
                   {"rms", e.rms},
                   {"rel_max", e.rel_max},
                   {"worst", point_json(e.worst, s.geo)}});
  return {{"family", s.family},
          {"equation", s.geo ? "geo" : "mhd"},
          {"transforms", s.transforms},
          {"grid_size", r.grid_size},
          {"evaluated", r.evaluated},
          {"skipped", r.skipped},
          {"tolerance", r.tolerance},
          {"max_relative", r.max_relative()},
          {"vacuous", r.vacuous},
          {"passed", r.passed},
          {"equations", eqs}};
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string grid_line(const Grid& g) {
  std::string out = "grid:";
  char buf[96];
  for (Var v : g.vars) {
    const Axis& a = g.axis(v);
    std::snprintf(buf, sizeof buf, " %s[%g, %g]x%d", std::string(var_name(v)).c_str(), a.min, a.max, a.count);
    out += buf;
  }
  return out + "\n";
}

int cmd_verify(const std::string& config, bool deterministic, std::ostream& out) {
  const BuiltSolution s = build_solution(load_solution_spec(config));
  const ResidualReport r = verify(s);
  if (!deterministic) out << "generated: " << timestamp() << "\n";
  out << "family: " << s.family << "\n";
  if (s.geo) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "equation: geo (k = %.17g)\n", s.k);
    out << buf;
  } else {
    out << "equation: mhd\n";
  }
  out << "transforms:";
  if (s.transforms.empty()) out << " none";
  for (const auto& t : s.transforms) out << " [" << t << "]";
  out << "\n" << grid_line(s.grid) << format_report(r);
  out << "--- json ---\n" << report_json(s, r).dump(2) << "\n";
  return r.passed ? kExitPass : kExitFail;
}

int cmd_sample(const std::string& config, const std::string& output, std::ostream& err) {
  const BuiltSolution s = build_solution(load_solution_spec(config));
  const SampleTable t = sample(s);
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot write " << output << "\n";
    return kExitOutput;
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) file << (i ? "," : "") << t.header[i];
  file << "\n";
  char buf[40];
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      file << (i ? "," : "") << buf;
    }
    file << "\n";
  }
  file.flush();
  if (!file) {
    err << "error: failed writing " << output << "\n";
    return kExitOutput;
  }
  err << "sampled " << t.rows.size() << " of " << t.grid_size << " grid points; skipped " << t.skipped
      << " (excluded or outside the domain)\n";
  return kExitPass;
}

}  // namespace

std::string families_listing() {
  return R"(geo_A  Theorem 2.1
  equation: geo
  constants: k, c (default 1), d (default 0), c0 (default 0), base_point (default 0), quadrature_tolerance (default 1e-12)
  functions: theta(t)
  modes: list of {a, b, c, d}
  constraints: (c,d) ≠ (0,0); (a_i,b_i) ≠ (0,0)
  default tolerance: 1e-7 (quadrature-backed)

geo_B  Theorem 2.2, Remark 2.3
  equation: geo
  constants: k, b (a_0, default 0), c (b_0, default 0)
  functions: alpha(t), beta(t) (optional; given together they shift the steady solution)
  series_terms: default 40
  constraints: points with (x+alpha)^2 + y^2 <= 1e-6 are excluded when c ≠ 0

geo_field
  equation: geo
  constants: k
  functions: H(t, x, y)

mhd_A  Proposition 3.1
  equation: mhd
  functions: sigma(t, z), theta(t, z), tau(t, z)

mhd_B  Theorem 3.2, cases 1-3
  equation: mhd
  constants: case (1, 2 or 3), a1, a2, c (default 0)
  branch: plus | minus (minus requires c ≠ 0)
  functions: lambda(t, z)
  modes: alpha1, alpha2, beta1, beta2: lists of functions of varpi
  constraints: zeta-chain denominators must not vanish; z > 0 for cases 2-3; t > 0 for case 3;
               E^2 - 4c^2 > 1e-6

mhd_C  Proposition 3.3
  equation: mhd
  functions: F(w, varpi), G(w, varpi)
  variant: planar (varpi = x) | radial (varpi = x^2 + y^2)

mhd_D  Proposition 3.3 with the rotation and shear transforms
  equation: mhd
  constants: epsilon (default 1)
  functions: F(w, varpi), G(w, varpi), alpha(w), sigma(t, z), tau(t, z), lambda(t, z)

mhd_field
  equation: mhd
  functions: phi(t, x, y, z), psi(t, x, y, z)

transforms (geo): translate {a, b}, scale {c, weight = -3}, gauge {alpha(t), beta(t)}
transforms (mhd): translate {a, b}, scale_time {c, weight = 1}, scale_space {c}, shear_x {sigma, tau},
                  shear_y {sigma}, rotate_plus {alpha(w), psi_sign = 1}, rotate_minus {beta(w), psi_sign = -1}
)";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build and verify exact solutions of the geopotential and MHD equations", "exactpde"};
  app.require_subcommand(1);
  app.fallthrough();
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic, "Omit the timestamp line");

  std::string config, output;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a configured solution on its grid");
  verify_cmd->add_option("--config", config, "Config file (JSON)")->required();
  auto* sample_cmd = app.add_subcommand("sample", "Write field values and residuals as CSV");
  sample_cmd->add_option("--config", config, "Config file (JSON)")->required();
  sample_cmd->add_option("--output", output, "CSV output path")->required();
  auto* families_cmd = app.add_subcommand("families", "List the solution families");
  families_cmd->add_option("--config", config, "Ignored");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(config, deterministic, out);
    if (sample_cmd->parsed()) return cmd_sample(config, output, err);
    out << families_listing();
    return kExitPass;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "constraint violated: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace exactpde
