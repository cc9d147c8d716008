#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "mixphase/app/commands.hpp"
#include "mixphase/app/verify.hpp"
#include "mixphase/error.hpp"

using namespace mixphase;
using namespace mixphase::app;

namespace {

std::string json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases of mixed states under parallel transport"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  CommonOptions common;
  std::string out_file;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", common.tol, "visibility floor below which a phase is undefined");
    cmd->add_option("--steps", common.steps, "default steps per path segment");
    cmd->add_option("--seed", common.seed, "random seed");
    cmd->add_option("--out", out_file, "output file (default stdout)");
    cmd->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  PhaseCommand phase;
  auto* phase_cmd = app.add_subcommand("phase", "compute a geometric phase from state and path descriptors");
  phase_cmd->add_option("--state", phase.state_file, "state descriptor JSON")->required();
  phase_cmd->add_option("--path", phase.path_file, "path descriptor JSON")->required();
  phase_cmd->add_option("--kind", phase.kind, "diag | offdiag | cycle | pure");
  phase_cmd->add_option("--indices", phase.indices, "1-based indices for cycle / pure, e.g. 1,3,2");
  phase_cmd->add_flag("--allow-degenerate", phase.allow_degenerate, "admit degenerate spectra");
  phase_cmd->add_option("--residual-tol", phase.residual_tol, "largest acceptable transport residual");
  add_common(phase_cmd);

  DecomposeCommand decomp;
  auto* decomp_cmd = app.add_subcommand("decompose", "split a permuting transport into cycle and diagonal blocks");
  decomp_cmd->add_option("--state", decomp.state_file, "state descriptor JSON")->required();
  decomp_cmd->add_option("--path", decomp.path_file, "path descriptor JSON")->required();
  decomp_cmd->add_option("--perm-tol", decomp.permutation_tol, "overlap tolerance for basis permutations");
  add_common(decomp_cmd);

  ScanCommand scan;
  auto* scan_cmd = app.add_subcommand("scan", "parameter scans");
  scan_cmd->require_subcommand(1);
  auto* nodal_cmd = scan_cmd->add_subcommand("nodal", "nodal surface of the qubit off-diagonal trace");
  nodal_cmd->add_option("--fb-min", scan.fb_min);
  nodal_cmd->add_option("--fb-max", scan.fb_max);
  nodal_cmd->add_option("--fb-count", scan.fb_count);
  nodal_cmd->add_option("--omega-min", scan.omega_min);
  nodal_cmd->add_option("--omega-max", scan.omega_max);
  nodal_cmd->add_option("--omega-count", scan.omega_count);
  nodal_cmd->add_option("--eps", scan.eps, "half-width of the sign-bracket certificate in eta^2");
  nodal_cmd->add_option("--plot", scan.plot_file, "also write an SVG plot");
  add_common(nodal_cmd);

  auto* franson_cmd = app.add_subcommand("franson", "two-photon interferometer simulation");
  franson_cmd->require_subcommand(1);
  SweepCommand sweep;
  auto* sweep_cmd = franson_cmd->add_subcommand("sweep", "coincidence intensity over (r, beta, chi)");
  sweep_cmd->add_option("--r", sweep.r, "degrees of polarization")->delimiter(',');
  sweep_cmd->add_option("--beta-min", sweep.beta_min);
  sweep_cmd->add_option("--beta-max", sweep.beta_max);
  sweep_cmd->add_option("--beta-count", sweep.beta_count);
  sweep_cmd->add_option("--chi-samples", sweep.chi_samples);
  add_common(sweep_cmd);
  FitCommand fit;
  auto* fit_cmd = franson_cmd->add_subcommand("fit", "fit the fringe shift and visibility");
  fit_cmd->add_option("--r", fit.r);
  fit_cmd->add_option("--beta", fit.beta);
  fit_cmd->add_option("--chi-samples", fit.chi_samples);
  fit_cmd->add_option("--shots", fit.shots, "mean counts per chi bin; 0 means noiseless");
  add_common(fit_cmd);

  VerifyCommand verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the numeric acceptance criteria");
  verify_cmd->add_option("--only", verify.only, "criterion ids or slugs")->delimiter(',');
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Validation);
  }

  try {
    const bool json_only = *phase_cmd || *decomp_cmd || *fit_cmd || *verify_cmd;
    if (json_only && common.format == "csv") validation_error("--format", "this command writes JSON only");
    if (*phase_cmd) {
      write_output(out_file, json_text(run_phase(phase, common)));
    } else if (*decomp_cmd) {
      write_output(out_file, json_text(run_decompose(decomp, common)));
    } else if (*nodal_cmd) {
      write_output(out_file, run_scan_nodal(scan, common));
    } else if (*sweep_cmd) {
      write_output(out_file, run_franson_sweep(sweep, common));
    } else if (*fit_cmd) {
      write_output(out_file, json_text(run_franson_fit(fit, common)));
    } else if (*verify_cmd) {
      const nlohmann::json report = run_verify_command(verify, common);
      for (const auto& c : report["criteria"]) {
        CriterionResult r;
        r.info = {c["id"], c["slug"], c["title"]};
        r.passed = c["passed"];
        r.measured = c["measured"].is_number() ? c["measured"].get<double>() : INFINITY;
        r.threshold = c["threshold"];
        r.detail = c["detail"];
        std::cerr << format_line(r) << "\n";
      }
      write_output(out_file, json_text(report));
      return report["passed"].get<bool>() ? 0 : static_cast<int>(ExitCode::Validation);
    }
  } catch (const CliError& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(is_numeric_failure(e.code()) ? ExitCode::Numeric : ExitCode::Validation);
  }
  return 0;
}
