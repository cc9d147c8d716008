#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixphase/app/descriptors.hpp"
#include "mixphase/phases.hpp"

namespace mixphase::app {

inline constexpr const char* kToolName = "mixphase";
inline constexpr const char* kToolVersion = MIXPHASE_VERSION;

/// Settings shared by every subcommand; recorded in each output.
struct CommonOptions {
  double tol = kDefaultVisibilityFloor;
  int steps = kDefaultStepsPerSegment;
  std::uint64_t seed = 20021;
  std::string format;  // "csv" | "json"; empty picks the command default
};

/// FNV-1a 64 of the canonical config dump, as "fnv1a64:<16 hex digits>".
std::string config_hash(const nlohmann::json& config);

/// { tool, version, command, config_hash, seed, tol, steps }.
nlohmann::json output_meta(const std::string& command, const nlohmann::json& config, const CommonOptions& common);

/// "# key=value" comment lines carrying the same fields as output_meta.
std::string csv_preamble(const nlohmann::json& meta);

/// %.12g
std::string format_real(double x);

nlohmann::json phase_result_json(const PhaseResult& result);

struct PhaseCommand {
  std::string state_file;
  std::string path_file;
  std::string kind = "offdiag";  // diag | offdiag | cycle | pure
  std::string indices;           // 1-based, comma separated
  bool allow_degenerate = false;
  double residual_tol = 1e-6;
};
nlohmann::json run_phase(const PhaseCommand& cmd, const CommonOptions& common);

struct DecomposeCommand {
  std::string state_file;
  std::string path_file;
  double permutation_tol = 1e-8;
};
nlohmann::json run_decompose(const DecomposeCommand& cmd, const CommonOptions& common);

/// Centered grids: value_i = min + (i + 1/2) (max - min) / count.
std::vector<double> centered_grid(double min, double max, int count);

struct ScanCommand {
  double fb_min = 0.0, fb_max = 1.0;
  int fb_count = 50;
  double omega_min = -kPi, omega_max = kPi;
  int omega_count = 50;
  double eps = 1e-3;
  std::string plot_file;
};
/// CSV `fb,omega,eta2,status` (or JSON rows); writes an SVG when plot_file is set.
std::string run_scan_nodal(const ScanCommand& cmd, const CommonOptions& common);

struct SweepCommand {
  std::vector<double> r{0.6};
  double beta_min = 0.0, beta_max = kPi;
  int beta_count = 21;
  int chi_samples = 32;
};
/// CSV `r,beta,chi,intensity`.
std::string run_franson_sweep(const SweepCommand& cmd, const CommonOptions& common);

struct FitCommand {
  double r = 0.6;
  double beta = 0.0;
  int chi_samples = 32;
  double shots = 0.0;  // mean counts per bin; 0 disables shot noise
};
/// { r, beta, shift, visibility, predicted_trace, ... }.
nlohmann::json run_franson_fit(const FitCommand& cmd, const CommonOptions& common);

struct VerifyCommand {
  std::vector<std::string> only;
};
/// Report JSON; `passed` is true only when every selected criterion passes.
nlohmann::json run_verify_command(const VerifyCommand& cmd, const CommonOptions& common);

/// Writes to the file, or stdout when path is empty.
void write_output(const std::string& path, const std::string& text);

}  // namespace mixphase::app
