#include "mixphase/franson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixphase {

namespace {

Eigen::Matrix4cd kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::Matrix4cd out;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) out(2 * s + a1, 2 * t + a2) = a(s, t) * b(a1, a2);
  return out;
}

}  // namespace

ComplexMatrix TwoPhotonState::system_marginal() const {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int a = 0; a < 2; ++a) rho(s, t) += amplitudes(2 * s + a) * std::conj(amplitudes(2 * t + a));
  return rho;
}

std::pair<TwoPhotonState, TwoPhotonState> purify(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    std::ostringstream msg;
    msg << "r = " << r << " outside [0, 1]";
    throw Error(ErrorCode::RangeError, msg.str());
  }
  const double plus = std::sqrt(0.5 * (1.0 + r));
  const double minus = std::sqrt(0.5 * (1.0 - r));
  TwoPhotonState psi{Eigen::Vector4cd(plus, 0.0, 0.0, minus)};
  // Short arms flip the polarization of both photons.
  const Eigen::Matrix4cd flip = kron(pauli_x(), pauli_x());
  TwoPhotonState perp{flip * psi.amplitudes};
  return {psi, perp};
}

ArmUnitaries arm_unitaries(double beta) {
  if (!(beta >= 0.0 && beta <= kPi)) {
    std::ostringstream msg;
    msg << "beta = " << beta << " outside [0, pi]";
    throw Error(ErrorCode::RangeError, msg.str());
  }
  // |h><v| - |v><h| = i sigma_y, so the transport arm is exp(-i beta sigma_y).
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  ComplexMatrix u(2, 2);
  u << c, -s, s, c;
  return ArmUnitaries{u, u.transpose()};
}

double coincidence_intensity(double r, double beta, double chi) {
  const auto [psi, perp] = purify(r);
  const ArmUnitaries arms = arm_unitaries(beta);
  const Eigen::Vector4cd out = std::polar(1.0, chi) * perp.amplitudes + kron(arms.transport, arms.ancilla) * psi.amplitudes;
  return 0.5 * out.squaredNorm();
}

double predicted_trace(double r, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  return std::sqrt(std::max(0.0, 1.0 - r * r)) * c * c - s * s;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x6d69u};
  return std::mt19937_64(seq);
}

std::vector<double> chi_grid(int samples) {
  std::vector<double> chi(static_cast<std::size_t>(std::max(samples, 0)));
  for (int i = 0; i < samples; ++i) chi[i] = 2.0 * kPi * i / samples;
  return chi;
}

FringeScan fringe_fit(std::vector<double> chi_values, std::vector<double> intensities,
                      const std::optional<ShotNoise>& noise) {
  const std::size_t n = chi_values.size();
  if (intensities.size() != n) throw Error(ErrorCode::ShapeMismatch, "chi and intensity lengths differ");
  if (n < 8) throw Error(ErrorCode::InsufficientSamples, "need at least 8 chi samples");
  const auto [lo, hi] = std::minmax_element(chi_values.begin(), chi_values.end());
  const double span = (*hi - *lo) * static_cast<double>(n) / static_cast<double>(n - 1);
  if (span < 2.0 * kPi - 1e-9) {
    std::ostringstream msg;
    msg << "chi samples span " << span << " rad, need 2 pi";
    throw Error(ErrorCode::InsufficientSamples, msg.str());
  }
  if (noise) {
    if (!(noise->mean_counts >= 1.0)) throw Error(ErrorCode::InvalidArgument, "mean counts must be >= 1");
    std::mt19937_64 rng = substream(noise->seed, noise->stream);
    for (double& value : intensities) {
      std::poisson_distribution<long long> draw(std::max(0.0, value) * noise->mean_counts);
      value = static_cast<double>(draw(rng));
    }
  }

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(chi_values[i]);
    design(i, 2) = std::sin(chi_values[i]);
    y(i) = intensities[i];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);

  FringeScan scan;
  scan.fit.offset = coef(0);
  scan.fit.amplitude = std::hypot(coef(1), coef(2));
  scan.fit.shift = principal_arg(Complex(coef(1), coef(2)));
  scan.fit.visibility = scan.fit.offset != 0.0 ? scan.fit.amplitude / scan.fit.offset : 0.0;
  scan.fit.rms_residual = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(n));
  scan.chi_values = std::move(chi_values);
  scan.intensities = std::move(intensities);
  return scan;
}

FringeScan simulate_fringes(double r, double beta, int samples, const std::optional<ShotNoise>& noise) {
  std::vector<double> chi = chi_grid(samples);
  std::vector<double> intensity(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) intensity[i] = coincidence_intensity(r, beta, chi[i]);
  return fringe_fit(std::move(chi), std::move(intensity), noise);
}

}  // namespace mixphase
