#pragma once

#include <array>
#include <random>
#include <vector>

#include "mixphase/algebra.hpp"
#include "mixphase/transport.hpp"

namespace mixphase::app {

using Rng = std::mt19937_64;

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
ComplexMatrix random_unitary(int n, Rng& rng);
/// Hermitian with entries of order `scale`.
ComplexMatrix random_hermitian(int n, Rng& rng, double scale = 1.0);
/// Positive weights summing to 1 with pairwise gaps above `min_gap`; the
/// last `zeros` entries are exactly zero.
std::vector<double> random_spectrum(int n, Rng& rng, int zeros = 0, double min_gap = 1e-3);
/// Diagonal unitary with independent uniform phases.
ComplexMatrix random_phases(int n, Rng& rng);
/// 1 to `max_segments` great-circle arcs starting at +z, each about an
/// axis perpendicular to the current Bloch vector, angles in (0.05, pi - 0.05).
std::vector<PathSegment> random_geodesic_path(Rng& rng, int max_segments = 3, int steps = kDefaultStepsPerSegment);
/// 2-segment path with random Hermitian generators of dimension n.
std::vector<PathSegment> random_generator_path(int n, Rng& rng, int steps = kDefaultStepsPerSegment);

/// Rodrigues rotation of v by angle about the unit axis.
std::array<double, 3> rotate(const std::array<double, 3>& v, const std::array<double, 3>& axis, double angle);

}  // namespace mixphase::app
