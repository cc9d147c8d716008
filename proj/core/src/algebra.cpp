#include "mixphase/algebra.hpp"

#include <cmath>
#include <sstream>

namespace mixphase {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadSpectrum: return "BadSpectrum";
    case ErrorCode::BadBasis: return "BadBasis";
    case ErrorCode::BadPairing: return "BadPairing";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ZeroOverlapStep: return "ZeroOverlapStep";
    case ErrorCode::AntipodalEndpoints: return "AntipodalEndpoints";
    case ErrorCode::NotQuasiOrthogonal: return "NotQuasiOrthogonal";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::MultipleCycles: return "MultipleCycles";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResidualContract: return "ResidualContract";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::ZeroOverlapStep:
    case ErrorCode::AntipodalEndpoints:
    case ErrorCode::ResidualContract:
      return true;
    default:
      return false;
  }
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && max_abs(a.adjoint() * a - identity(static_cast<int>(a.rows()))) <= tol;
}

bool has_orthonormal_columns(const ComplexMatrix& a, double tol) {
  return max_abs(a.adjoint() * a - identity(static_cast<int>(a.cols()))) <= tol;
}

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << " must be a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!a.allFinite()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

void fix_column_gauge(ComplexMatrix& columns) {
  constexpr double kTie = 1e-12;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      const double v = std::abs(columns(r, c));
      if (v > best_abs + kTie) {
        best = r;
        best_abs = v;
      }
    }
    if (best_abs > 0.0) {
      const Complex z = columns(best, c);
      columns.col(c) *= std::conj(z) / std::abs(z);
      columns(best, c) = Complex(std::abs(columns(best, c)), 0.0);
    }
  }
}

SpectralDecomposition eig_hermitian(const ComplexMatrix& a, double tol) {
  require_square_finite(a, "eig_hermitian input");
  const double asym = max_abs(a - a.adjoint());
  if (asym > tol) {
    std::ostringstream msg;
    msg << "||A - A^dagger||_max = " << asym << " exceeds tol " << tol;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "self-adjoint eigensolver failed";
    if (solver.eigenvectors().size() == sym.size()) {
      msg << ", residual " << max_abs(sym * solver.eigenvectors() -
                                      solver.eigenvectors() * solver.eigenvalues().cast<Complex>().asDiagonal());
    }
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  fix_column_gauge(out.eigenvectors);
  return out;
}

ComplexMatrix psd_root(const ComplexMatrix& a, int l, double tol) {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "root order must be >= 1");
  const SpectralDecomposition spec = eig_hermitian(a, std::max(1e-10, tol));
  RealVector roots(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    double lambda = spec.eigenvalues(k);
    if (lambda < -tol) {
      std::ostringstream msg;
      msg << "eigenvalue " << lambda << " below -" << tol;
      throw Error(ErrorCode::NotPositive, msg.str());
    }
    lambda = std::max(lambda, 0.0);
    roots(k) = l == 1 ? lambda : l == 2 ? std::sqrt(lambda) : std::pow(lambda, 1.0 / l);
  }
  return spec.eigenvectors * roots.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

Complex trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "trace of a non-square matrix");
  return a.trace();
}

Complex det(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  return a.determinant();
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << a.rows() << "x" << a.cols() << " times " << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix exp_hermitian_generator(const ComplexMatrix& h, double t) {
  const SpectralDecomposition spec = eig_hermitian(h, 1e-10 * std::max(1.0, max_abs(h)));
  ComplexVector phases(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -spec.eigenvalues(k) * t);
  }
  return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

}  // namespace mixphase
