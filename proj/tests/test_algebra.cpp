#include <gtest/gtest.h>

#include "mixphase/algebra.hpp"
#include "mixphase/app/random.hpp"
#include "mixphase/error.hpp"

using namespace mixphase;

namespace {

// Scaling-and-squaring Taylor series, independent of the spectral route.
ComplexMatrix series_exp(const ComplexMatrix& a) {
  int squarings = 0;
  ComplexMatrix scaled = a;
  while (max_abs(scaled) > 0.1) {
    scaled /= 2.0;
    ++squarings;
  }
  ComplexMatrix sum = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix term = sum;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

ComplexMatrix power(const ComplexMatrix& a, int l) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int k = 0; k < l; ++k) out = out * a;
  return out;
}

}  // namespace

TEST(Algebra, EigHermitianReconstructsAndSortsDescending) {
  app::Rng rng(1);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix h = app::random_hermitian(n, rng);
    const SpectralDecomposition spec = eig_hermitian(h);
    EXPECT_LT(max_abs(spec.reconstruct() - h), 1e-12);
    EXPECT_TRUE(has_orthonormal_columns(spec.eigenvectors, 1e-12));
    for (int k = 0; k + 1 < n; ++k) EXPECT_GE(spec.eigenvalues(k), spec.eigenvalues(k + 1));
  }
}

TEST(Algebra, EigenvectorGaugeIsDeterministic) {
  app::Rng rng(2);
  const ComplexMatrix h = app::random_hermitian(4, rng);
  const SpectralDecomposition a = eig_hermitian(h);
  ComplexMatrix rephased = a.eigenvectors * app::random_phases(4, rng);
  fix_column_gauge(rephased);
  EXPECT_LT(max_abs(rephased - a.eigenvectors), 1e-14);
  for (int c = 0; c < 4; ++c) {
    Eigen::Index row = 0;
    a.eigenvectors.col(c).cwiseAbs().maxCoeff(&row);
    EXPECT_NEAR(a.eigenvectors(row, c).imag(), 0.0, 1e-14);
    EXPECT_GT(a.eigenvectors(row, c).real(), 0.0);
  }
}

TEST(Algebra, EigHermitianRejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  try {
    eig_hermitian(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Algebra, PsdRootPowersBack) {
  app::Rng rng(3);
  for (int l = 1; l <= 5; ++l) {
    const ComplexMatrix g = app::random_unitary(3, rng);
    const ComplexMatrix a = g * Eigen::Vector3cd(0.6, 0.3, 0.1).asDiagonal() * g.adjoint();
    const ComplexMatrix root = psd_root(a, l);
    EXPECT_TRUE(is_hermitian(root, 1e-12));
    EXPECT_LT(max_abs(power(root, l) - a), 1e-12);
  }
}

TEST(Algebra, PsdRootOfRankDeficientMatrix) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const ComplexMatrix root = psd_root(a, 3);
  EXPECT_LT(max_abs(root - a), 1e-15);
}

TEST(Algebra, PsdRootRejectsNegative) {
  EXPECT_THROW(psd_root(-identity(2), 2), Error);
  ComplexMatrix near = ComplexMatrix::Zero(2, 2);
  near(0, 0) = 1.0;
  near(1, 1) = -1e-14;
  EXPECT_NO_THROW(psd_root(near, 2));
}

TEST(Algebra, ExpGeneratorMatchesSeries) {
  app::Rng rng(4);
  for (int n : {2, 3, 5}) {
    const ComplexMatrix h = app::random_hermitian(n, rng);
    const ComplexMatrix u = exp_hermitian_generator(h, 0.7);
    EXPECT_TRUE(is_unitary(u, 1e-12));
    EXPECT_LT(max_abs(u - series_exp(Complex(0.0, -0.7) * h)), 1e-11);
  }
}

TEST(Algebra, PauliRotationClosedForm) {
  const double theta = 0.9;
  const ComplexMatrix u = exp_hermitian_generator(0.5 * pauli_x(), theta);
  const ComplexMatrix expected =
      std::cos(theta / 2) * identity(2) - Complex(0.0, 1.0) * std::sin(theta / 2) * pauli_x();
  EXPECT_LT(max_abs(u - expected), 1e-15);
}

TEST(Algebra, PauliAlgebra) {
  const Complex i(0.0, 1.0);
  EXPECT_LT(max_abs(pauli_x() * pauli_y() - i * pauli_z()), 1e-15);
  EXPECT_LT(max_abs(pauli_z() * pauli_z() - identity(2)), 1e-15);
}

TEST(Algebra, TraceDeterminantMultiply) {
  ComplexMatrix a(2, 2);
  a << Complex(1, 1), 2.0, 3.0, Complex(0, -1);
  EXPECT_EQ(trace(a), Complex(1, 0));
  EXPECT_LT(std::abs(det(a) - (Complex(1, 1) * Complex(0, -1) - 6.0)), 1e-14);
  EXPECT_THROW(multiply(a, ComplexMatrix::Zero(3, 3)), Error);
  EXPECT_EQ(adjoint(a), a.adjoint());
}

TEST(Algebra, PrincipalArgRange) {
  EXPECT_DOUBLE_EQ(principal_arg(Complex(-1.0, 0.0)), kPi);
  EXPECT_DOUBLE_EQ(principal_arg(Complex(-1.0, -0.0)), kPi);
  EXPECT_DOUBLE_EQ(principal_arg(Complex(0.0, -1.0)), -kPi / 2);
}

TEST(Algebra, RequireSquareFinite) {
  EXPECT_THROW(require_square_finite(ComplexMatrix::Zero(2, 3), "a"), Error);
  ComplexMatrix bad = identity(2);
  bad(0, 1) = Complex(std::nan(""), 0.0);
  EXPECT_THROW(require_square_finite(bad, "a"), Error);
  EXPECT_THROW(require_square_finite(ComplexMatrix(), "a"), Error);
}
