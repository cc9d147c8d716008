#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mixphase/algebra.hpp"

namespace mixphase {

/// One constant-generator leg of a path: U -> exp(-i H t) U for t in
/// [0, duration], sampled in `steps` equal increments.
struct PathSegment {
  ComplexMatrix generator;
  double duration = 0.0;
  int steps = 200;
};

inline constexpr int kDefaultStepsPerSegment = 200;

/// Qubit shortcut: a rotation of the Bloch vector by `angle` about `axis`
/// (generator n.sigma / 2). The axis is normalized here.
PathSegment rotation_segment(const std::array<double, 3>& axis, double angle,
                             int steps = kDefaultStepsPerSegment);

/// Sampled unitary path t -> U(t) with U(0) = I, and optionally its
/// parallel-transport gauge with respect to a fixed orthonormal basis.
class UnitaryPath {
 public:
  int dim() const { return static_cast<int>(samples_.front().rows()); }
  const std::vector<PathSegment>& segments() const { return segments_; }
  const std::vector<ComplexMatrix>& samples() const { return samples_; }
  const std::vector<double>& times() const { return times_; }
  /// Index of the segment that generates the step samples[i] -> samples[i+1].
  const std::vector<int>& step_segment() const { return step_segment_; }

  bool has_parallel() const { return parallel_.has_value(); }
  const std::vector<ComplexMatrix>& parallel() const;
  const ComplexMatrix& parallel_basis() const;
  const ComplexMatrix& final_unitary() const { return samples_.back(); }
  const ComplexMatrix& final_parallel() const { return parallel().back(); }

 private:
  friend UnitaryPath evolve(const std::vector<PathSegment>& segments);
  friend UnitaryPath parallelize(const UnitaryPath& path, const ComplexMatrix& basis);

  std::vector<PathSegment> segments_;
  std::vector<ComplexMatrix> samples_;
  std::vector<double> times_;
  std::vector<int> step_segment_;
  std::optional<std::vector<ComplexMatrix>> parallel_;
  ComplexMatrix parallel_basis_;
};

/// Composes the segments left to right. Total samples = sum(steps) + 1.
UnitaryPath evolve(const std::vector<PathSegment>& segments);

/// Returns the path with U_par(t) = U(t) C(t), where C(t) is diagonal in
/// `basis` and cancels the phase <psi_k|U^dagger dU|psi_k> of every basis
/// vector. The phase integral uses the trapezoid rule, which is exact for
/// piecewise-constant generators because <psi_k(t)|H|psi_k(t)> is constant
/// on each segment.
UnitaryPath parallelize(const UnitaryPath& path, const ComplexMatrix& basis);

/// max_{i,k} |arg <psi_k| U_par(t_i)^dagger U_par(t_{i+1}) |psi_k>|.
double transport_residual(const UnitaryPath& path);

/// eta = |<psi_1| U_par(T) |psi_1>|.
double visibility(const UnitaryPath& path);

/// Oriented solid angle enclosed by the Bloch-sphere trace of psi_1 and the
/// shortest geodesic closing it: Omega = -2 arg <psi_1|U_par(T)|psi_1>,
/// reduced to (-2pi, 2pi]. Positive for counterclockwise circuits seen from
/// outside the sphere. Throws AntipodalEndpoints when eta < 1e-9.
double solid_angle(const UnitaryPath& path);

/// Bloch vector of the state U_par(t) psi_1 for each sample (qubits only).
std::vector<std::array<double, 3>> bloch_trace(const UnitaryPath& path);

}  // namespace mixphase
