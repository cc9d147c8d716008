#pragma once

// Two-photon polarization interferometer: system photon s and ancilla a in
// the product basis {hh, hv, vh, vv} (system index first).

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "mixphase/algebra.hpp"
#include "mixphase/states.hpp"

namespace mixphase {

struct TwoPhotonState {
  Eigen::Vector4cd amplitudes;

  /// Reduced state of the system photon, Tr_a |Psi><Psi|.
  ComplexMatrix system_marginal() const;
  DensityMatrix system_state() const { return DensityMatrix::from_matrix(system_marginal()); }
};

/// Lifts rho = (1 + r sigma_z)/2 to sqrt((1+r)/2)|hh> + sqrt((1-r)/2)|vv>,
/// and the short-arm flipped copy (sigma_x on both photons) whose marginal
/// is (1 - r sigma_z)/2.
std::pair<TwoPhotonState, TwoPhotonState> purify(double r);

struct ArmUnitaries {
  ComplexMatrix transport;  // exp[-beta(|h><v| - |v><h|)]
  ComplexMatrix ancilla;    // exp[+beta(|h><v| - |v><h|)]
};

ArmUnitaries arm_unitaries(double beta);

/// Coincidence intensity |e^{i chi} Psi_perp + (U (x) V) Psi|^2 / 2, computed
/// from the state amplitudes. The 1/2 puts the chi-independent term at 1.
double coincidence_intensity(double r, double beta, double chi);

/// sqrt(1 - r^2) cos^2(beta) - sin^2(beta).
double predicted_trace(double r, double beta);

struct FringeFit {
  double shift = 0.0;       // phi in (-pi, pi]
  double visibility = 0.0;  // amplitude / offset
  double offset = 0.0;
  double amplitude = 0.0;
  double rms_residual = 0.0;
};

struct FringeScan {
  std::vector<double> chi_values;
  std::vector<double> intensities;
  FringeFit fit;
};

struct ShotNoise {
  /// Expected coincidence count per chi bin at unit intensity.
  double mean_counts = 1e6;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Independent, reproducible generator for (seed, stream); the same pair
/// gives the same sequence on any thread.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

/// Least-squares fit of a + b cos(chi - phi). With `noise`, the intensities
/// are first replaced by Poisson counts with mean mean_counts * I(chi).
/// Needs at least 8 samples spanning at least 2 pi (InsufficientSamples).
FringeScan fringe_fit(std::vector<double> chi_values, std::vector<double> intensities,
                      const std::optional<ShotNoise>& noise = std::nullopt);

/// `samples` equally spaced chi values over [0, 2 pi).
std::vector<double> chi_grid(int samples);

/// Simulated fringe scan of the interferometer, then fitted.
FringeScan simulate_fringes(double r, double beta, int samples = 32,
                            const std::optional<ShotNoise>& noise = std::nullopt);

}  // namespace mixphase
