#include "mixphase/app/commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "mixphase/app/verify.hpp"
#include "mixphase/franson.hpp"
#include "mixphase/qubitlab.hpp"
#include "mixphase/states.hpp"
#include "mixphase/structure.hpp"
#include "mixphase/transport.hpp"

namespace mixphase::app {

using nlohmann::json;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) validation_error(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(complex_json(m(a, b)));
    rows.push_back(row);
  }
  return rows;
}

json one_based(const std::vector<int>& labels) {
  json out = json::array();
  for (int k : labels) out.push_back(k + 1);
  return out;
}

void require_positive(double value, const std::string& field) {
  if (!(value > 0.0) || !std::isfinite(value)) validation_error(field, "must be > 0");
}

void check_common(const CommonOptions& common) {
  require_positive(common.tol, "--tol");
  if (common.steps < 1) validation_error("--steps", "must be >= 1");
  if (!common.format.empty() && common.format != "csv" && common.format != "json") {
    validation_error("--format", "expected csv or json");
  }
}

// Evolves the path and puts it in the parallel gauge of `basis`.
UnitaryPath transported_path(const PathDescriptor& path, const ComplexMatrix& basis) {
  if (path.segments.front().generator.rows() != basis.rows()) {
    validation_error("path", "dimension differs from the state");
  }
  return parallelize(evolve(path.segments), basis);
}

// Ordered tuples of distinct indices whose smallest entry comes first: one
// representative per cyclic rotation class.
void canonical_tuples(int n, int l, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == l) {
    out.push_back(current);
    return;
  }
  for (int k = 0; k < n; ++k) {
    if (std::find(current.begin(), current.end(), k) != current.end()) continue;
    if (!current.empty() && k < current.front()) continue;
    current.push_back(k);
    canonical_tuples(n, l, current, out);
    current.pop_back();
  }
}

void write_svg(const std::string& path, const std::vector<NodalRow>& rows, const ScanCommand& cmd) {
  std::ostringstream svg;
  const double w = 640, h = 480, pad = 50;
  auto x_of = [&](double omega) { return pad + (omega - cmd.omega_min) / (cmd.omega_max - cmd.omega_min) * (w - 2 * pad); };
  auto y_of = [&](double eta2) { return h - pad - eta2 * (h - 2 * pad); };
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">Omega</text>\n";
  svg << "<text x=\"15\" y=\"" << h / 2 << "\" transform=\"rotate(-90 15 " << h / 2
      << ")\" text-anchor=\"middle\">eta^2</text>\n";
  for (const auto& row : rows) {
    if (row.status != NodalStatus::Solution) continue;
    const double hue = 240.0 * (1.0 - (row.fb - cmd.fb_min) / (cmd.fb_max - cmd.fb_min));
    svg << "<circle cx=\"" << format_real(x_of(row.omega)) << "\" cy=\"" << format_real(y_of(*row.eta2))
        << "\" r=\"1.5\" fill=\"hsl(" << format_real(hue) << ",80%,45%)\"/>\n";
  }
  svg << "</svg>\n";
  write_output(path, svg.str());
}

}  // namespace

std::string config_hash(const json& config) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : config.dump()) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, hash);
  return buf;
}

json output_meta(const std::string& command, const json& config, const CommonOptions& common) {
  json full = config;
  full["command"] = command;
  full["tol"] = common.tol;
  full["steps"] = common.steps;
  full["seed"] = common.seed;
  return json{{"tool", kToolName},  {"version", kToolVersion}, {"command", command},
              {"config_hash", config_hash(full)}, {"seed", common.seed}, {"tol", common.tol},
              {"steps", common.steps}};
}

std::string csv_preamble(const json& meta) {
  std::ostringstream out;
  for (const char* key : {"tool", "version", "command", "config_hash", "seed", "tol", "steps"}) {
    const json& v = meta.at(key);
    out << "# " << key << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return out.str();
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json phase_result_json(const PhaseResult& result) {
  return json{{"trace", complex_json(result.trace_value)},
              {"magnitude", result.magnitude},
              {"defined", result.defined()},
              {"phase_angle", result.phase_angle ? json(*result.phase_angle) : json(nullptr)},
              {"tol", result.tol_used}};
}

json run_phase(const PhaseCommand& cmd, const CommonOptions& common) {
  check_common(common);
  if (cmd.kind != "diag" && cmd.kind != "offdiag" && cmd.kind != "cycle" && cmd.kind != "pure") {
    validation_error("--kind", "expected diag, offdiag, cycle or pure");
  }
  const StateDescriptor state = parse_state(load_json(cmd.state_file));
  const PathDescriptor path = parse_path(load_json(cmd.path_file), common.steps);
  const UnitaryPath transported = transported_path(path, state.basis);
  const double residual = transport_residual(transported);
  if (residual > cmd.residual_tol) {
    std::ostringstream msg;
    msg << "parallel-transport residual " << residual << " exceeds " << cmd.residual_tol << "; increase --steps";
    throw CliError(ExitCode::Numeric, "ResidualContract: " + msg.str());
  }
  const ComplexMatrix& u = transported.final_parallel();

  PhaseOptions opts;
  opts.tol = common.tol;
  opts.allow_degenerate = cmd.allow_degenerate;

  std::vector<int> indices;
  if (cmd.kind == "cycle" || cmd.kind == "pure") {
    if (cmd.indices.empty()) validation_error("--indices", "required for --kind " + cmd.kind);
    indices = parse_index_list(cmd.indices, "--indices");
    for (int k : indices) {
      if (k >= static_cast<int>(state.eigenvalues.size())) validation_error("--indices", "index exceeds dimension");
    }
  }

  PhaseResult result;
  if (cmd.kind == "diag") {
    result = gamma_diag(make_density(state.eigenvalues, state.basis), u, opts);
  } else if (cmd.kind == "offdiag") {
    const DensityMatrix rho = make_density(state.eigenvalues, state.basis);
    const DensityMatrix perp = quasi_complement(rho, state.pairing, cmd.allow_degenerate);
    result = gamma_offdiag(rho, perp, u, opts);
  } else if (cmd.kind == "cycle") {
    const QuasiOrthogonalFamily family = cyclic_family(state.eigenvalues, state.basis);
    result = gamma_l(family, indices, u, opts);
  } else {
    result = gamma_pure(indices, u, state.basis, common.tol);
  }

  const json config{{"state", read_text(cmd.state_file)}, {"path", read_text(cmd.path_file)}, {"kind", cmd.kind},
                    {"indices", cmd.indices},           {"allow_degenerate", cmd.allow_degenerate},
                    {"residual_tol", cmd.residual_tol}};
  json meta = output_meta("phase", config, common);
  meta["kind"] = cmd.kind;
  if (!indices.empty()) meta["indices"] = one_based(indices);
  meta["transport_residual"] = residual;
  meta["residual_tol"] = cmd.residual_tol;
  meta["total_steps"] = static_cast<int>(transported.samples().size()) - 1;
  meta["degeneracy_override"] = cmd.allow_degenerate;
  json out = phase_result_json(result);
  out["meta"] = meta;
  return out;
}

json run_decompose(const DecomposeCommand& cmd, const CommonOptions& common) {
  check_common(common);
  require_positive(cmd.permutation_tol, "--perm-tol");
  const StateDescriptor state = parse_state(load_json(cmd.state_file));
  const PathDescriptor path = parse_path(load_json(cmd.path_file), common.steps);
  const UnitaryPath transported = transported_path(path, state.basis);
  const ComplexMatrix& u = transported.final_parallel();
  const DecompositionReport report = decompose(u, state.basis, cmd.permutation_tol);

  json out;
  out["is_permuting"] = report.is_permuting;
  out["transport"] = matrix_json(report.in_basis);
  if (report.is_permuting) {
    const QuasiOrthogonalFamily family = cyclic_family(state.eigenvalues, state.basis);
    const int n = family.dim();
    out["m"] = report.m;
    out["permutation"] = one_based(report.permutation);
    out["cycle_labels"] = one_based(report.cycle_labels);
    out["diagonal_labels"] = one_based(report.diagonal_labels);
    out["u_p"] = matrix_json(report.u_p);
    json ud = json::array();
    for (Complex z : report.u_d) ud.push_back(complex_json(z));
    out["u_d"] = ud;
    out["reassembly_residual"] = report.reassembly_residual;
    out["signed_cycle_determinant"] = complex_json(signed_cycle_determinant(report));
    out["signed_determinant"] = complex_json((n % 2 == 1 ? 1.0 : -1.0) * det(u));
    json terms = json::array();
    for (int l = 1; l <= n; ++l) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> scratch;
      canonical_tuples(n, l, scratch, tuples);
      for (const auto& idx : tuples) {
        std::vector<ComplexMatrix> roots;
        for (int j : idx) roots.push_back(family.members[j].root(l));
        const Complex p = p_term(report, family, idx);
        const Complex d = d_term(report, family, idx);
        const Complex full = cyclic_trace(u, roots);
        terms.push_back(json{{"indices", one_based(idx)},
                             {"l", l},
                             {"P", complex_json(p)},
                             {"D", complex_json(d)},
                             {"trace", complex_json(full)},
                             {"split_residual", std::abs(full - p - d)}});
      }
    }
    out["terms"] = terms;
  }
  const json config{{"state", read_text(cmd.state_file)},
                    {"path", read_text(cmd.path_file)},
                    {"permutation_tol", cmd.permutation_tol}};
  out["meta"] = output_meta("decompose", config, common);
  out["meta"]["transport_residual"] = transport_residual(transported);
  return out;
}

std::vector<double> centered_grid(double min, double max, int count) {
  if (count < 1) validation_error("grid", "count must be >= 1");
  if (!(max > min)) validation_error("grid", "max must exceed min");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = min + (i + 0.5) * (max - min) / count;
  return out;
}

std::string run_scan_nodal(const ScanCommand& cmd, const CommonOptions& common) {
  check_common(common);
  if (cmd.fb_min < 0.0 || cmd.fb_max > 1.0) validation_error("--fb-min/--fb-max", "must lie within [0, 1]");
  if (cmd.omega_min < -2.0 * kPi || cmd.omega_max > 2.0 * kPi) {
    validation_error("--omega-min/--omega-max", "must lie within [-2 pi, 2 pi]");
  }
  require_positive(cmd.eps, "--eps");
  const std::vector<double> fb = centered_grid(cmd.fb_min, cmd.fb_max, cmd.fb_count);
  const std::vector<double> omega = centered_grid(cmd.omega_min, cmd.omega_max, cmd.omega_count);
  const std::vector<NodalRow> rows = scan_nodal_surface(fb, omega, cmd.eps);

  const json config{{"fb", {cmd.fb_min, cmd.fb_max, cmd.fb_count}},
                    {"omega", {cmd.omega_min, cmd.omega_max, cmd.omega_count}},
                    {"eps", cmd.eps}};
  const json meta = output_meta("scan nodal", config, common);
  auto status_name = [](NodalStatus s) {
    switch (s) {
      case NodalStatus::Solution: return "solution";
      case NodalStatus::NoSolution: return "none";
      case NodalStatus::Uncertified: return "uncertified";
    }
    return "none";
  };
  if (!cmd.plot_file.empty()) write_svg(cmd.plot_file, rows, cmd);

  if (common.format == "json") {
    json out{{"meta", meta}, {"rows", json::array()}};
    for (const auto& row : rows) {
      out["rows"].push_back(json{{"fb", row.fb},
                                 {"omega", row.omega},
                                 {"eta2", row.eta2 ? json(*row.eta2) : json(nullptr)},
                                 {"status", status_name(row.status)}});
    }
    return out.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << csv_preamble(meta) << "fb,omega,eta2,status\n";
  for (const auto& row : rows) {
    csv << format_real(row.fb) << ',' << format_real(row.omega) << ','
        << (row.eta2 ? format_real(*row.eta2) : std::string("nan")) << ',' << status_name(row.status) << '\n';
  }
  return csv.str();
}

std::string run_franson_sweep(const SweepCommand& cmd, const CommonOptions& common) {
  check_common(common);
  if (cmd.r.empty()) validation_error("--r", "need at least one value");
  if (cmd.beta_count < 1) validation_error("--beta-count", "must be >= 1");
  if (cmd.chi_samples < 1) validation_error("--chi-samples", "must be >= 1");
  std::vector<double> betas(cmd.beta_count);
  for (int j = 0; j < cmd.beta_count; ++j) {
    betas[j] = cmd.beta_count == 1 ? cmd.beta_min
                                   : cmd.beta_min + (cmd.beta_max - cmd.beta_min) * j / (cmd.beta_count - 1);
  }
  const std::vector<double> chis = chi_grid(cmd.chi_samples);
  const json config{{"r", cmd.r},
                    {"beta", {cmd.beta_min, cmd.beta_max, cmd.beta_count}},
                    {"chi_samples", cmd.chi_samples}};
  const json meta = output_meta("franson sweep", config, common);

  struct Row {
    double r, beta, chi, intensity;
  };
  std::vector<Row> rows;
  for (double r : cmd.r) {
    for (double beta : betas) {
      for (double chi : chis) rows.push_back(Row{r, beta, chi, coincidence_intensity(r, beta, chi)});
    }
  }
  if (common.format == "json") {
    json out{{"meta", meta}, {"rows", json::array()}};
    for (const Row& row : rows) {
      out["rows"].push_back(json{{"r", row.r}, {"beta", row.beta}, {"chi", row.chi}, {"intensity", row.intensity}});
    }
    return out.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << csv_preamble(meta) << "r,beta,chi,intensity\n";
  for (const Row& row : rows) {
    csv << format_real(row.r) << ',' << format_real(row.beta) << ',' << format_real(row.chi) << ','
        << format_real(row.intensity) << '\n';
  }
  return csv.str();
}

json run_franson_fit(const FitCommand& cmd, const CommonOptions& common) {
  check_common(common);
  std::optional<ShotNoise> noise;
  if (cmd.shots > 0.0) noise = ShotNoise{cmd.shots, common.seed, 0};
  const FringeScan scan = simulate_fringes(cmd.r, cmd.beta, cmd.chi_samples, noise);
  const double t = predicted_trace(cmd.r, cmd.beta);
  const json config{{"r", cmd.r}, {"beta", cmd.beta}, {"chi_samples", cmd.chi_samples}, {"shots", cmd.shots}};
  json out{{"r", cmd.r},
           {"beta", cmd.beta},
           {"shift", scan.fit.shift},
           {"visibility", scan.fit.visibility},
           {"offset", scan.fit.offset},
           {"amplitude", scan.fit.amplitude},
           {"rms_residual", scan.fit.rms_residual},
           {"predicted_trace", t},
           {"predicted_shift", std::abs(t) > common.tol ? json(principal_arg(Complex(t, 0.0))) : json(nullptr)},
           {"shots", cmd.shots}};
  out["meta"] = output_meta("franson fit", config, common);
  return out;
}

json run_verify_command(const VerifyCommand& cmd, const CommonOptions& common) {
  VerifyOptions options;
  options.seed = common.seed;
  options.only = cmd.only;
  VerifyReport report;
  try {
    report = run_verify(options);
  } catch (const std::invalid_argument& e) {
    validation_error("--only", e.what());
  }
  json out{{"passed", report.all_passed()}, {"criteria", json::array()}};
  for (const auto& r : report.results) {
    out["criteria"].push_back(json{{"id", r.info.id},
                                   {"slug", r.info.slug},
                                   {"title", r.info.title},
                                   {"passed", r.passed},
                                   {"measured", r.measured},
                                   {"threshold", r.threshold},
                                   {"detail", r.detail}});
  }
  out["meta"] = output_meta("verify", json{{"only", cmd.only}}, common);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) validation_error(path, "cannot open output file");
  out << text;
}

}  // namespace mixphase::app
