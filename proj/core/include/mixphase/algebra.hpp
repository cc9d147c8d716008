#pragma once

// Dense complex linear algebra for the small (N <= 16) operators used
// throughout: Hermitian eigendecomposition with a deterministic eigenvector
// gauge, principal roots of positive semidefinite matrices, and the
// exponential of anti-Hermitian generators.

#include <complex>

#include <Eigen/Dense>

#include "mixphase/error.hpp"

namespace mixphase {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Eigenvalues sorted descending, with matching orthonormal eigenvector
/// columns. In each column the largest-magnitude entry is real and
/// nonnegative (ties go to the lowest row index).
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

/// Max-norm of a matrix, max_ij |A_ij|.
double max_abs(const ComplexMatrix& a);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);
bool has_orthonormal_columns(const ComplexMatrix& a, double tol);

/// Throws InvalidArgument for empty, non-square, or non-finite input.
void require_square_finite(const ComplexMatrix& a, const char* what);

/// Rephases each column so its largest-magnitude entry is real nonnegative.
void fix_column_gauge(ComplexMatrix& columns);

SpectralDecomposition eig_hermitian(const ComplexMatrix& a, double tol = 1e-10);

/// Principal l-th root of a Hermitian PSD matrix. Eigenvalues in [-tol, 0)
/// are treated as zero; anything below -tol throws NotPositive.
ComplexMatrix psd_root(const ComplexMatrix& a, int l, double tol = 1e-12);

Complex trace(const ComplexMatrix& a);
Complex det(const ComplexMatrix& a);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// exp(-i H t) for Hermitian H, through the spectral decomposition of H.
ComplexMatrix exp_hermitian_generator(const ComplexMatrix& h, double t);

ComplexMatrix identity(int n);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// arg z reduced to (-pi, pi].
double principal_arg(Complex z);

}  // namespace mixphase
