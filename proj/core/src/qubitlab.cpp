#include "mixphase/qubitlab.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mixphase/parallel.hpp"
#include "mixphase/phases.hpp"
#include "mixphase/states.hpp"

namespace mixphase {

namespace {

void require_range(bool ok, const char* what, double value) {
  if (!ok) {
    std::ostringstream msg;
    msg << what << " = " << value << " is out of range";
    throw Error(ErrorCode::RangeError, msg.str());
  }
}

}  // namespace

QubitConfig QubitConfig::make(double r, double eta, double omega) {
  require_range(r > 0.0 && r <= 1.0, "r", r);
  require_range(eta >= 0.0 && eta <= 1.0, "eta", eta);
  require_range(omega > -2.0 * kPi && omega <= 2.0 * kPi, "omega", omega);
  return QubitConfig{r, eta, omega};
}

QubitConfig config_from_path(double r, const UnitaryPath& path) {
  const double eta = visibility(path);
  double omega = 0.0;
  if (eta >= 1e-9) omega = solid_angle(path);
  return QubitConfig::make(r, eta, omega);
}

double offdiag_trace_eta2(double eta2, double fb, double omega) {
  constexpr double gamma12 = -1.0;
  return eta2 * std::sqrt(fb) * std::cos(omega) + (1.0 - eta2) * gamma12;
}

double offdiag_trace_closed(const QubitConfig& cfg) {
  return offdiag_trace_eta2(cfg.eta * cfg.eta, cfg.fb(), cfg.omega);
}

Complex diag_trace_closed(const QubitConfig& cfg) {
  const double half = 0.5 * cfg.omega;
  const double modulus = cfg.eta * std::sqrt(std::cos(half) * std::cos(half) + cfg.r * cfg.r * std::sin(half) * std::sin(half));
  // Quadrant-aware arctan[r tan(Omega/2)], continuous in Omega.
  const double phase = -std::atan2(cfg.r * std::sin(half), std::cos(half));
  return std::polar(modulus, phase);
}

std::optional<double> nodal_eta2(double fb, double omega) {
  require_range(fb >= 0.0 && fb < 1.0, "fb", fb);
  const double denom = 1.0 + std::sqrt(fb) * std::cos(omega);
  if (denom < 1.0 - 1e-15 || denom <= 0.0) return std::nullopt;
  return std::min(1.0, 1.0 / denom);
}

std::vector<NodalRow> scan_nodal_surface(std::span<const double> fb_grid, std::span<const double> omega_grid,
                                         double eps) {
  std::vector<NodalRow> rows(fb_grid.size() * omega_grid.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    NodalRow row;
    row.fb = fb_grid[idx / omega_grid.size()];
    row.omega = omega_grid[idx % omega_grid.size()];
    row.eta2 = nodal_eta2(row.fb, row.omega);
    if (row.eta2) {
      const double below = offdiag_trace_eta2(*row.eta2 - eps, row.fb, row.omega);
      const double above = offdiag_trace_eta2(*row.eta2 + eps, row.fb, row.omega);
      row.status = below < 0.0 && above > 0.0 ? NodalStatus::Solution : NodalStatus::Uncertified;
    }
    rows[idx] = row;
  });
  return rows;
}

MaximallyMixedScan maximally_mixed_traces(std::span<const double> deltas, double common_zero_tol) {
  const double half[] = {0.5, 0.5};
  const DensityMatrix rho = make_density(half, computational_basis(2));
  PhaseOptions opts;
  opts.allow_degenerate = true;

  MaximallyMixedScan scan;
  scan.rows.resize(deltas.size());
  scan.min_max_magnitude = deltas.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const ComplexMatrix u = exp_hermitian_generator(pauli_z(), deltas[i]);
    MaximallyMixedRow& row = scan.rows[i];
    row.delta = deltas[i];
    row.offdiag_trace = gamma_offdiag(rho, rho, u, opts).trace_value;
    row.diag_trace = gamma_diag(rho, u, opts).trace_value;
    const double a = std::abs(row.offdiag_trace);
    const double b = std::abs(row.diag_trace);
    scan.min_max_magnitude = std::min(scan.min_max_magnitude, std::max(a, b));
    if (a < common_zero_tol && b < common_zero_tol) scan.no_common_zero = false;
  }
  return scan;
}

std::vector<PathSegment> meridian_latitude_path(double eta, double omega, int min_steps) {
  require_range(eta > 0.0 && eta < 1.0, "eta", eta);
  const double polar = 2.0 * std::acos(eta);
  const double cap = 1.0 - std::cos(polar);
  const double azimuth = omega / cap;
  auto steps_for = [&](double angle) {
    return std::max(min_steps, static_cast<int>(std::ceil(std::abs(angle) / 0.01)));
  };
  return {rotation_segment({1.0, 0.0, 0.0}, polar, steps_for(polar)),
          rotation_segment({0.0, 0.0, 1.0}, azimuth, steps_for(azimuth))};
}

}  // namespace mixphase
