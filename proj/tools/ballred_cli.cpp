// Command-line front end: verification sweeps, critical-point tables, and
// landscape/profile/PDE exports.
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ballred/audit.hpp"
#include "ballred/contour.hpp"
#include "ballred/critical.hpp"
#include "ballred/field.hpp"
#include "ballred/pde.hpp"
#include "ballred/profile.hpp"
#include "ballred/reduced.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) return false;
  os << content;
  return static_cast<bool>(os);
}

bool parse_range(const std::string& s, int& lo, int& hi) {
  const auto pos = s.find("..");
  if (pos == std::string::npos) return false;
  try {
    lo = std::stoi(s.substr(0, pos));
    hi = std::stoi(s.substr(pos + 2));
  } catch (...) {
    return false;
  }
  return true;
}

bool parse_grid(const std::string& s, int& ns, int& nr) {
  const auto pos = s.find('x');
  if (pos == std::string::npos) return false;
  try {
    ns = std::stoi(s.substr(0, pos));
    nr = std::stoi(s.substr(pos + 1));
  } catch (...) {
    return false;
  }
  return true;
}

int cmd_verify(int dim, const std::string& range, int mesh, const std::string& json_path) {
  using namespace ballred;
  VerificationReport rep;
  if (!range.empty()) {
    int lo = 0, hi = 0;
    if (!parse_range(range, lo, hi) || lo < 3 || hi < lo) {
      std::cerr << "verify: bad --range (expected LO..HI with 3 <= LO <= HI)\n";
      return kExitUsage;
    }
    rep = audit_range(lo, hi, mesh);
  } else {
    rep = audit_dimension(dim, mesh);
  }
  std::cout << emit_report(rep, ReportFormat::TEXT);
  if (!json_path.empty()) {
    if (!write_text_file(json_path, emit_report(rep, ReportFormat::JSON))) {
      std::cerr << "verify: cannot write " << json_path << "\n";
      return kExitIo;
    }
  }
  return rep.all_passed ? kExitOk : kExitMath;
}

int cmd_critical(int dim, double c_n) {
  using namespace ballred;
  try {
    const ReducedConfig cfg(dim, c_n);
    const double rho0 = find_rho0(dim);
    const auto [rho1, rho2] = find_critical_rhos(dim);
    const int changes = count_chi_sign_changes(dim);
    const CriticalPointRecord rec1 = classify(rho1, dim, cfg);
    const CriticalPointRecord rec2 = classify(rho2, dim, cfg);
    const BoundaryClassification b1 = classify_boundary(rho1, dim);
    const BoundaryClassification b2 = classify_boundary(rho2, dim);

    std::printf("dimension N = %d, c_n = %g\n", dim, c_n);
    std::printf("rho0 = %.6g   (alpha changes sign -/+)\n", rho0);
    std::printf("chi sign changes on scan mesh: %d%s\n", changes,
                changes == 2 ? "" : "   [unexpected count]");
    std::printf("%-8s %-10s %-10s %-10s %-12s %-6s %-7s %-12s %s\n", "point", "rho", "lambda",
                "mu", "chi_resid", "morse", "degree", "margin", "boundary");
    auto row = [](const char* tag, const CriticalPointRecord& r, const BoundaryClassification& b) {
      std::printf("%-8s %-10.6g %-10.6g %-10.6g %-12.3g %-6d %-7d %-12.6g %s\n", tag, r.rho,
                  r.lambda, r.mu, r.chi_residual, r.morse_index, r.degree, r.nondegeneracy_margin,
                  to_string(b.kind));
    };
    row("rho1", rec1, b1);
    row("rho2", rec2, b2);
    std::printf("m(rho1) = %.6g, m(rho2) = %.6g, M(rho2) = %.6g\n", b1.m_value, b2.m_value,
                b2.M_value);
    if (!b2.zero_latitudes.empty())
      std::printf("psi zero latitudes at rho2: x1 = %+.6g, %+.6g\n", b2.zero_latitudes[0],
                  b2.zero_latitudes[1]);
    std::printf("%s\n", labeling_discrepancy_note());
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "critical: " << e.what() << "\n";
    return kExitMath;
  }
}

int cmd_landscape(int dim, int mesh, double c_n, const std::string& out) {
  using namespace ballred;
  std::string csv = "rho,f,chi,m,M,Lambda\n";
  try {
    const ReducedConfig cfg(dim, c_n);
    const double rho0 = find_rho0(dim);
    const double lo = rho0 + kGuardOffset, hi = 1.0 - kGuardOffset;
    for (int k = 0; k < mesh; ++k) {
      const double r = lo + (hi - lo) * k / (mesh - 1);
      csv += format_sig17(r) + ',' + format_sig17(little_f(r, cfg)) + ',' +
             format_sig17(chi(r, dim)) + ',' + format_sig17(little_m(r, dim)) + ',' +
             format_sig17(big_m(r, dim)) + ',' + format_sig17(capital_lambda(r, dim)) + '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "landscape: " << e.what() << "\n";
    return kExitMath;
  }
  if (!write_text_file(out, csv)) {
    std::cerr << "landscape: cannot write " << out << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_profile(int dim, int which, std::optional<double> eps, const std::string& grid_spec,
                double c_n, const std::string& out) {
  using namespace ballred;
  int ns = 129, nr = 65;
  if (!grid_spec.empty() && !parse_grid(grid_spec, ns, nr)) {
    std::cerr << "profile: bad --grid (expected SxR)\n";
    return kExitUsage;
  }
  try {
    const auto [rho1, rho2] = find_critical_rhos(dim);
    const double rho = (which == 1) ? rho1 : rho2;
    const ProfileSpec spec = make_profile_spec(rho, dim);
    const BoundaryClassification cls = classify_boundary(rho, dim);

    const Field2D phi = phi_field(spec, ns, nr);
    const auto contours = extract_zero_contours(phi);

    std::ostringstream csv;
    write_field_csv(phi, csv);
    if (!write_text_file(out + "_phi.csv", csv.str())) {
      std::cerr << "profile: cannot write " << out << "_phi.csv\n";
      return kExitIo;
    }
    if (!write_text_file(out + "_contour.json", contours_to_json(contours))) {
      std::cerr << "profile: cannot write " << out << "_contour.json\n";
      return kExitIo;
    }
    if (eps) {
      const ReducedConfig cfg(dim, c_n);
      std::string warning;
      const Field2D va = ansatz_field(spec, *eps, cfg, ns, nr, &warning);
      std::ostringstream acsv;
      write_field_csv(va, acsv);
      if (!write_text_file(out + "_ansatz.csv", acsv.str())) {
        std::cerr << "profile: cannot write " << out << "_ansatz.csv\n";
        return kExitIo;
      }
      if (!warning.empty()) std::printf("warning: %s\n", warning.c_str());
    }

    std::printf("profile at rho%d = %.6g (N = %d): %s\n", which, rho, dim, to_string(cls.kind));
    std::printf("m = %.6g, M = %.6g\n", cls.m_value, cls.M_value);
    if (!cls.zero_latitudes.empty())
      std::printf("normal derivative vanishes at x1 = %+.6g, %+.6g\n", cls.zero_latitudes[0],
                  cls.zero_latitudes[1]);
    if (which == 1) std::printf("%s\n", labeling_discrepancy_note());
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "profile: " << e.what() << "\n";
    return kExitMath;
  }
}

int cmd_pde(int dim, int which, double eps_start, double eps_end, int steps,
            const std::string& grid_spec, double c_n, double tol, const std::string& out) {
  using namespace ballred;
  int ns = 129, nr = 65;
  if (!grid_spec.empty() && !parse_grid(grid_spec, ns, nr)) {
    std::cerr << "pde: bad --grid (expected SxR)\n";
    return kExitUsage;
  }
  try {
    const AxiGrid grid = make_axi_grid(ns, nr);
    const ReducedConfig cfg(dim, c_n);
    const Branch branch = (which == 1) ? Branch::rho1 : Branch::rho2;
    const auto ladder = continue_in_epsilon(eps_start, eps_end, steps, branch, dim, grid, cfg, tol);

    const BoundaryClassification cls = classify_boundary(ladder.front().seed_rho, dim);
    std::string json = "[";
    bool first = true;
    for (const auto& r : ladder) {
      const Diagnostics d = extract_diagnostics(r, dim);
      if (!first) json += ',';
      first = false;
      json += "{\"epsilon\":" + format_sig17(r.epsilon) +
              ",\"rho_hat\":" + format_sig17(d.rho_hat) +
              ",\"height_scaling\":" + format_sig17(d.height_scaling) +
              ",\"residual\":" + format_sig17(r.final_residual) +
              ",\"iterations\":" + std::to_string(r.newton_iterations) +
              ",\"energy\":" + format_sig17(d.energy) + ",\"sign_pattern\":\"" + d.sign_pattern +
              "\"}";
      std::printf("eps=%.6g iters=%d residual=%.3g rho_hat=%.6g height_scaling=%.6g energy=%.6g\n",
                  r.epsilon, r.newton_iterations, r.final_residual, d.rho_hat, d.height_scaling,
                  d.energy);
    }
    json += "]";
    if (!write_text_file(out + "_ladder.json", json)) {
      std::cerr << "pde: cannot write " << out << "_ladder.json\n";
      return kExitIo;
    }
    std::ostringstream csv;
    write_field_csv(ladder.back().field, csv);
    if (!write_text_file(out + "_final.csv", csv.str())) {
      std::cerr << "pde: cannot write " << out << "_final.csv\n";
      return kExitIo;
    }

    const Diagnostics dfirst = extract_diagnostics(ladder.front(), dim);
    const Diagnostics dlast = extract_diagnostics(ladder.back(), dim);
    const double rho = ladder.front().seed_rho;
    const bool has_minus = dlast.sign_pattern.find('-') != std::string::npos;
    const bool has_plus = dlast.sign_pattern.find('+') != std::string::npos;
    const bool match = (cls.kind == BoundarySignKind::changes_sign) ? (has_minus && has_plus)
                                                                    : !(has_minus && has_plus);
    std::printf("branch rho%d = %.6g: classification %s, discrete boundary pattern %s\n", which,
                rho, to_string(cls.kind), match ? "matches" : "DOES NOT MATCH");
    std::printf("rho_hat trend: %.6g -> %.6g (target %.6g)\n", dfirst.rho_hat, dlast.rho_hat, rho);
    std::printf("height scaling trend: %.6g -> %.6g\n", dfirst.height_scaling,
                dlast.height_scaling);
    return match ? kExitOk : kExitMath;
  } catch (const NewtonFailure& e) {
    std::cerr << "pde: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << "pde: " << e.what() << "\n";
    return kExitMath;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional reduction toolkit for the almost-critical ball problem"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the named-inequality audit");
  int v_dim = 3;
  std::string v_range, v_json;
  int v_mesh = 1000;
  auto* v_dim_opt = verify->add_option("--dim", v_dim, "dimension N >= 3")->check(CLI::Range(3, 1000));
  verify->add_option("--range", v_range, "dimension range LO..HI")->excludes(v_dim_opt);
  verify->add_option("--mesh", v_mesh, "mesh points for sweep checks")->check(CLI::Range(100, 10000000));
  verify->add_option("--json", v_json, "write the JSON report to this path");

  // critical
  auto* critical = app.add_subcommand("critical", "locate and classify the critical points");
  int c_dim = 3;
  double c_cn = 1.0;
  critical->add_option("--dim", c_dim, "dimension N >= 3")->check(CLI::Range(3, 1000));
  critical->add_option("--c-n", c_cn, "reduced-energy constant c_n > 0")
      ->check(CLI::PositiveNumber);

  // landscape
  auto* landscape = app.add_subcommand("landscape", "export rho -> (f, chi, m, M, Lambda) table");
  int l_dim = 3, l_mesh = 1000;
  double l_cn = 1.0;
  std::string l_out;
  landscape->add_option("--dim", l_dim, "dimension N >= 3")->check(CLI::Range(3, 1000));
  landscape->add_option("--mesh", l_mesh, "number of mesh rows")->check(CLI::Range(16, 100000000));
  landscape->add_option("--c-n", l_cn, "reduced-energy constant c_n > 0")->check(CLI::PositiveNumber);
  landscape->add_option("--out", l_out, "output CSV path")->required();

  // profile
  auto* profile = app.add_subcommand("profile", "export the limiting profile and its nodal set");
  int p_dim = 3, p_which = 2;
  double p_eps = 0.0, p_cn = 1.0;
  std::string p_grid, p_out;
  bool p_has_eps = false;
  profile->add_option("--dim", p_dim, "dimension N >= 3")->check(CLI::Range(3, 1000));
  profile->add_option("--which", p_which, "critical radius: 1 or 2")->check(CLI::Range(1, 2));
  auto* eps_opt = profile->add_option("--eps", p_eps, "also export the ansatz field at this epsilon")
                      ->check(CLI::PositiveNumber);
  profile->add_option("--grid", p_grid, "grid SxR (default 129x65)");
  profile->add_option("--c-n", p_cn, "reduced-energy constant c_n > 0")->check(CLI::PositiveNumber);
  profile->add_option("--out", p_out, "output path prefix")->required();
  profile->parse_complete_callback([&] { p_has_eps = eps_opt->count() > 0; });

  // pde
  auto* pde = app.add_subcommand("pde", "solve the equation along an epsilon ladder");
  int d_dim = 3, d_which = 2, d_steps = 8;
  double d_eps_start = 0.3, d_eps_end = 0.05, d_cn = 1.0, d_tol = 1e-8;
  std::string d_grid, d_out;
  pde->add_option("--dim", d_dim, "dimension N >= 3")->check(CLI::Range(3, 1000));
  pde->add_option("--which", d_which, "branch: 1 or 2")->check(CLI::Range(1, 2));
  pde->add_option("--eps-start", d_eps_start, "ladder start")->check(CLI::PositiveNumber);
  pde->add_option("--eps-end", d_eps_end, "ladder end")->check(CLI::PositiveNumber);
  pde->add_option("--steps", d_steps, "number of rungs")->check(CLI::Range(2, 1000));
  pde->add_option("--grid", d_grid, "grid SxR (default 129x65)");
  pde->add_option("--c-n", d_cn, "reduced-energy constant c_n > 0")->check(CLI::PositiveNumber);
  pde->add_option("--tol", d_tol, "residual tolerance")->check(CLI::PositiveNumber);
  pde->add_option("--out", d_out, "output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (verify->parsed()) return cmd_verify(v_dim, v_range, v_mesh, v_json);
  if (critical->parsed()) return cmd_critical(c_dim, c_cn);
  if (landscape->parsed()) return cmd_landscape(l_dim, l_mesh, l_cn, l_out);
  if (profile->parsed())
    return cmd_profile(p_dim, p_which, p_has_eps ? std::optional<double>(p_eps) : std::nullopt,
                       p_grid, p_cn, p_out);
  if (pde->parsed())
    return cmd_pde(d_dim, d_which, d_eps_start, d_eps_end, d_steps, d_grid, d_cn, d_tol, d_out);
  return kExitUsage;
}
