#pragma once

#include <span>
#include <vector>

#include "mixphase/algebra.hpp"

namespace mixphase {

struct DensityTolerances {
  double trace = 1e-10;
  double rank = 1e-10;
  double gap = 1e-10;
  double basis = 1e-10;
};

/// Unit-trace Hermitian PSD matrix that remembers the basis it was built in.
///
/// `basis()` and `weights()` keep the construction order: weight k sits on
/// basis column k. `spectrum()` is the same data sorted descending and
/// gauge fixed. Matrices built from raw entries get both from an
/// eigendecomposition.
class DensityMatrix {
 public:
  static DensityMatrix from_spectrum(std::span<const double> weights, const ComplexMatrix& basis,
                                     const DensityTolerances& tol = {});
  static DensityMatrix from_matrix(const ComplexMatrix& rho, const DensityTolerances& tol = {});

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  const ComplexMatrix& basis() const { return basis_; }
  const RealVector& weights() const { return weights_; }
  int rank() const { return rank_; }
  bool nondegenerate() const { return nondegenerate_; }

  /// Principal l-th root, taken in the stored eigenbasis.
  ComplexMatrix root(int l) const;

  /// Matrix of the state in another orthonormal basis: B^dagger rho B.
  ComplexMatrix in_basis(const ComplexMatrix& other) const { return other.adjoint() * matrix_ * other; }

 private:
  DensityMatrix() = default;
  void finish(const DensityTolerances& tol);

  ComplexMatrix matrix_;
  SpectralDecomposition spectrum_;
  ComplexMatrix basis_;
  RealVector weights_;
  int rank_ = 0;
  bool nondegenerate_ = false;
};

/// rho = sum_k lambda_k |psi_k><psi_k| with psi_k the columns of `basis`.
DensityMatrix make_density(std::span<const double> eigenvalues, const ComplexMatrix& basis);

ComplexMatrix computational_basis(int n);

/// Cyclic shift k -> k+1 mod n, the default quasi-orthogonal pairing.
std::vector<int> cyclic_pairing(int n);

/// rho-perp = sum_k lambda_k |psi_pairing(k)><psi_pairing(k)|, in rho's own
/// basis. The pairing is 0-based and must be a fixed-point-free permutation.
/// An empty pairing means the cyclic shift. Degenerate states throw unless
/// `allow_degenerate` is set.
DensityMatrix quasi_complement(const DensityMatrix& rho, std::span<const int> pairing = {},
                               bool allow_degenerate = false);

/// N mutually quasi-orthogonal states sharing one basis: member j carries
/// lambda_k on basis vector (k + j) mod N.
struct QuasiOrthogonalFamily {
  ComplexMatrix basis;
  RealVector eigenvalues;
  std::vector<int> shifts;
  std::vector<DensityMatrix> members;

  int dim() const { return static_cast<int>(basis.rows()); }
  int size() const { return static_cast<int>(members.size()); }
  /// Eigenvalue that member `member` places on basis vector `index`.
  double weight(int member, int index) const;
};

QuasiOrthogonalFamily cyclic_family(std::span<const double> eigenvalues, const ComplexMatrix& basis);

/// [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, clamped to [0, 1].
double bures_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// True when `state` is diagonal in `basis` to within tol.
bool diagonal_in(const ComplexMatrix& state, const ComplexMatrix& basis, double tol);

}  // namespace mixphase
