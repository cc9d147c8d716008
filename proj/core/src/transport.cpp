#include "mixphase/transport.hpp"

#include <cmath>
#include <sstream>

namespace mixphase {

namespace {

constexpr double kZeroOverlap = 1e-12;
constexpr double kAntipodal = 1e-9;

void require_parallel(const UnitaryPath& path) {
  if (!path.has_parallel()) throw Error(ErrorCode::InvalidArgument, "path has no parallel-transport gauge");
}

void require_qubit(const UnitaryPath& path) {
  if (path.dim() != 2) throw Error(ErrorCode::InvalidArgument, "operation is defined for qubit paths only");
}

}  // namespace

PathSegment rotation_segment(const std::array<double, 3>& axis, double angle, int steps) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorCode::InvalidArgument, "rotation axis must be nonzero");
  // A negative angle is the same rotation about the reversed axis.
  const double sign = angle < 0.0 ? -1.0 : 1.0;
  ComplexMatrix h = sign * (axis[0] * pauli_x() + axis[1] * pauli_y() + axis[2] * pauli_z()) / (2.0 * norm);
  return PathSegment{std::move(h), std::abs(angle), steps};
}

const std::vector<ComplexMatrix>& UnitaryPath::parallel() const {
  require_parallel(*this);
  return *parallel_;
}

const ComplexMatrix& UnitaryPath::parallel_basis() const {
  require_parallel(*this);
  return parallel_basis_;
}

UnitaryPath evolve(const std::vector<PathSegment>& segments) {
  if (segments.empty()) throw Error(ErrorCode::InvalidArgument, "path needs at least one segment");
  const Eigen::Index n = segments.front().generator.rows();
  std::size_t total = 1;
  for (const auto& seg : segments) {
    require_square_finite(seg.generator, "segment generator");
    if (seg.generator.rows() != n) throw Error(ErrorCode::ShapeMismatch, "segments act on different dimensions");
    if (!is_hermitian(seg.generator, 1e-10 * std::max(1.0, max_abs(seg.generator)))) {
      throw Error(ErrorCode::NotHermitian, "segment generator is not Hermitian");
    }
    if (!(seg.duration >= 0.0) || !std::isfinite(seg.duration)) {
      throw Error(ErrorCode::InvalidArgument, "segment duration must be finite and >= 0");
    }
    if (seg.steps < 1) throw Error(ErrorCode::InvalidArgument, "segment steps must be >= 1");
    total += static_cast<std::size_t>(seg.steps);
  }

  UnitaryPath path;
  path.segments_ = segments;
  path.samples_.reserve(total);
  path.times_.reserve(total);
  path.step_segment_.reserve(total - 1);
  path.samples_.push_back(identity(static_cast<int>(n)));
  path.times_.push_back(0.0);
  double t = 0.0;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    const double dt = seg.duration / seg.steps;
    const ComplexMatrix step = exp_hermitian_generator(seg.generator, dt);
    for (int i = 0; i < seg.steps; ++i) {
      path.samples_.push_back(step * path.samples_.back());
      t += dt;
      path.times_.push_back(t);
      path.step_segment_.push_back(static_cast<int>(s));
    }
  }
  return path;
}

UnitaryPath parallelize(const UnitaryPath& path, const ComplexMatrix& basis) {
  if (basis.rows() != path.dim() || basis.cols() != path.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "basis dimension differs from path dimension");
  }
  if (!has_orthonormal_columns(basis, 1e-10)) throw Error(ErrorCode::BadBasis, "basis columns are not orthonormal");

  const auto& samples = path.samples();
  const int n = path.dim();
  const std::size_t count = samples.size();

  // phi_k(t) = int <psi_k| U^dagger H U |psi_k> dt
  RealVector phi = RealVector::Zero(n);
  std::vector<ComplexMatrix> parallel;
  parallel.reserve(count);
  parallel.push_back(samples.front());
  auto energy = [&](const ComplexMatrix& u, const ComplexMatrix& h, int k) {
    const ComplexVector psi = u * basis.col(k);
    return psi.dot(h * psi).real();
  };
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const PathSegment& seg = path.segments()[path.step_segment()[i]];
    const double dt = path.times()[i + 1] - path.times()[i];
    for (int k = 0; k < n; ++k) {
      phi(k) += 0.5 * dt * (energy(samples[i], seg.generator, k) + energy(samples[i + 1], seg.generator, k));
    }
    ComplexVector phases(n);
    for (int k = 0; k < n; ++k) phases(k) = std::polar(1.0, phi(k));
    parallel.push_back(samples[i + 1] * basis * phases.asDiagonal() * basis.adjoint());

    for (int k = 0; k < n; ++k) {
      const Complex overlap = (parallel[i] * basis.col(k)).dot(parallel[i + 1] * basis.col(k));
      if (std::abs(overlap) < kZeroOverlap) {
        std::ostringstream msg;
        msg << "step " << i << " basis vector " << k << " has overlap " << std::abs(overlap)
            << "; increase steps per segment";
        throw Error(ErrorCode::ZeroOverlapStep, msg.str());
      }
    }
  }

  UnitaryPath out = path;
  out.parallel_ = std::move(parallel);
  out.parallel_basis_ = basis;
  return out;
}

double transport_residual(const UnitaryPath& path) {
  const auto& par = path.parallel();
  const ComplexMatrix& basis = path.parallel_basis();
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < par.size(); ++i) {
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      const Complex overlap = (par[i] * basis.col(k)).dot(par[i + 1] * basis.col(k));
      worst = std::max(worst, std::abs(principal_arg(overlap)));
    }
  }
  return worst;
}

double visibility(const UnitaryPath& path) {
  const ComplexMatrix& basis = path.parallel_basis();
  const Complex a = basis.col(0).dot(path.final_parallel() * basis.col(0));
  return std::min(1.0, std::abs(a));
}

double solid_angle(const UnitaryPath& path) {
  require_qubit(path);
  const ComplexMatrix& basis = path.parallel_basis();
  const Complex a = basis.col(0).dot(path.final_parallel() * basis.col(0));
  if (std::abs(a) < kAntipodal) {
    std::ostringstream msg;
    msg << "endpoint visibility " << std::abs(a) << " leaves the closing geodesic undefined";
    throw Error(ErrorCode::AntipodalEndpoints, msg.str());
  }
  double omega = -2.0 * principal_arg(a);  // in [-2pi, 2pi)
  if (omega <= -2.0 * kPi) omega += 4.0 * kPi;
  return omega;
}

std::vector<std::array<double, 3>> bloch_trace(const UnitaryPath& path) {
  require_qubit(path);
  const ComplexMatrix& basis = path.parallel_basis();
  std::vector<std::array<double, 3>> out;
  out.reserve(path.parallel().size());
  const ComplexMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  for (const auto& u : path.parallel()) {
    const ComplexVector psi = basis.adjoint() * u * basis.col(0);
    out.push_back({psi.dot(sx * psi).real(), psi.dot(sy * psi).real(), psi.dot(sz * psi).real()});
  }
  return out;
}

}  // namespace mixphase
