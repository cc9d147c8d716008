#pragma once

// Closed-form qubit results for rho = (1 + r sigma_z)/2 and its complement
// (1 - r sigma_z)/2, parametrized by the Bloch length r, the pure-state
// visibility eta and the geodesically closed solid angle Omega.

#include <optional>
#include <span>
#include <vector>

#include "mixphase/algebra.hpp"
#include "mixphase/transport.hpp"

namespace mixphase {

struct QubitConfig {
  double r = 1.0;
  double eta = 1.0;
  double omega = 0.0;

  /// Validates r in (0, 1], eta in [0, 1], omega in (-2pi, 2pi].
  static QubitConfig make(double r, double eta, double omega);
  /// Bures fidelity between the state and its complement, 1 - r^2.
  double fb() const { return 1.0 - r * r; }
};

/// Reads eta and Omega off a parallel-transported qubit path. At antipodal
/// endpoints (eta below 1e-9) Omega is set to 0; it drops out of both
/// closed forms there.
QubitConfig config_from_path(double r, const UnitaryPath& path);

/// eta^2 sqrt(F_B) cos(Omega) + (1 - eta^2) gamma_12, with gamma_12 = -1.
double offdiag_trace_closed(const QubitConfig& cfg);

/// Same expression as a function of eta^2, without range checks. Linear
/// in eta^2 with slope 1 + sqrt(fb) cos(Omega).
double offdiag_trace_eta2(double eta2, double fb, double omega);

/// eta sqrt(cos^2(Omega/2) + r^2 sin^2(Omega/2)) exp(-i arctan[r tan(Omega/2)]),
/// with the arctan continued through Omega = pi; equivalently
/// eta (cos(Omega/2) - i r sin(Omega/2)).
Complex diag_trace_closed(const QubitConfig& cfg);

/// Node of the off-diagonal trace: eta^2 = 1 / (1 + sqrt(fb) cos Omega),
/// or nullopt when that value falls outside [0, 1].
std::optional<double> nodal_eta2(double fb, double omega);

enum class NodalStatus { Solution, NoSolution, Uncertified };

struct NodalRow {
  double fb = 0.0;
  double omega = 0.0;
  std::optional<double> eta2;
  NodalStatus status = NodalStatus::NoSolution;
};

/// One row per (fb, omega) pair, fb-major. Each solution is certified by
/// the closed-form trace changing sign between eta^2 - eps and eta^2 + eps.
std::vector<NodalRow> scan_nodal_surface(std::span<const double> fb_grid, std::span<const double> omega_grid,
                                         double eps = 1e-3);

struct MaximallyMixedRow {
  double delta = 0.0;
  Complex offdiag_trace;  // Tr(U sqrt(rho) U sqrt(rho_perp))
  Complex diag_trace;     // Tr(U rho)
};

struct MaximallyMixedScan {
  std::vector<MaximallyMixedRow> rows;
  /// min over the grid of max(|offdiag|, |diag|).
  double min_max_magnitude = 0.0;
  /// True when no row has both magnitudes below `common_zero_tol`.
  bool no_common_zero = true;
};

/// rho = I/2 driven by U = exp(-i delta sigma_z), evaluated numerically with
/// the degeneracy override.
MaximallyMixedScan maximally_mixed_traces(std::span<const double> deltas, double common_zero_tol = 1e-6);

/// Qubit path starting at |0>: a meridian down to polar angle 2 acos(eta)
/// followed by a latitude arc sized so the closed solid angle is `omega`.
/// Requires eta in (0, 1). Steps scale with arc length (at least
/// `min_steps` per segment).
std::vector<PathSegment> meridian_latitude_path(double eta, double omega, int min_steps = kDefaultStepsPerSegment);

}  // namespace mixphase
