#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mixphase/algebra.hpp"
#include "mixphase/states.hpp"

namespace mixphase {

inline constexpr double kDefaultVisibilityFloor = 1e-8;

/// Outcome of a phase functional. A trace whose magnitude does not exceed
/// the visibility floor is a nodal point: the phase is undefined, which is a
/// result rather than an error.
struct PhaseResult {
  Complex trace_value{0.0, 0.0};
  double magnitude = 0.0;
  std::optional<Complex> phase_factor;
  std::optional<double> phase_angle;
  double tol_used = kDefaultVisibilityFloor;

  bool defined() const { return phase_factor.has_value(); }
};

/// Phi[z] = z / |z|, undefined when |z| <= tol.
PhaseResult phase_factor(Complex z, double tol = kDefaultVisibilityFloor);

/// sigma_jk = Phi[<psi_j| U_par |psi_k>] (0-based indices).
PhaseResult sigma(int j, int k, const ComplexMatrix& transport, const ComplexMatrix& basis,
                  double tol = kDefaultVisibilityFloor);

/// Cyclic product sigma_{j1 j2} sigma_{j2 j3} ... sigma_{jl j1} over
/// distinct indices. trace_value holds the product of the raw matrix
/// elements; the result is defined only when every factor is.
PhaseResult gamma_pure(std::span<const int> indices, const ComplexMatrix& transport, const ComplexMatrix& basis,
                       double tol = kDefaultVisibilityFloor);

struct PhaseOptions {
  double tol = kDefaultVisibilityFloor;
  /// Admit degenerate states. Only meant for the maximally mixed qubit
  /// comparison, where the traces are still meaningful relative phases.
  bool allow_degenerate = false;
  /// Tolerance for the shared-basis checks.
  double basis_tol = 1e-9;
};

/// Phi[Tr(U_par rho)].
PhaseResult gamma_diag(const DensityMatrix& rho, const ComplexMatrix& transport, const PhaseOptions& opts = {});

/// Phi[Tr(U_par sqrt(rho) U_par sqrt(rho_perp))].
PhaseResult gamma_offdiag(const DensityMatrix& rho, const DensityMatrix& rho_perp, const ComplexMatrix& transport,
                          const PhaseOptions& opts = {});

/// Phi[Tr(U_par rho_1^(1/l) U_par rho_2^(1/l) ... U_par rho_l^(1/l))] for
/// l = members.size() states sharing one eigenbasis.
PhaseResult gamma_l(std::span<const DensityMatrix> members, const ComplexMatrix& transport,
                    const PhaseOptions& opts = {});

/// gamma_l over family members picked by 0-based index.
PhaseResult gamma_l(const QuasiOrthogonalFamily& family, std::span<const int> indices,
                    const ComplexMatrix& transport, const PhaseOptions& opts = {});

/// Tr(U X_1 U X_2 ... U X_l); the raw cyclic trace behind gamma_l.
Complex cyclic_trace(const ComplexMatrix& transport, std::span<const ComplexMatrix> factors);

}  // namespace mixphase
