#include "mixphase/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mixphase {

namespace {

double root_of(double w, int l) {
  if (w <= 0.0) return 0.0;
  return l == 1 ? w : l == 2 ? std::sqrt(w) : std::pow(w, 1.0 / l);
}

}  // namespace

DensityMatrix DensityMatrix::from_spectrum(std::span<const double> weights, const ComplexMatrix& basis,
                                           const DensityTolerances& tol) {
  require_square_finite(basis, "basis");
  if (static_cast<Eigen::Index>(weights.size()) != basis.rows()) {
    std::ostringstream msg;
    msg << weights.size() << " eigenvalues for a " << basis.rows() << "-dimensional basis";
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      std::ostringstream msg;
      msg << "eigenvalue " << w << " is negative or non-finite";
      throw Error(ErrorCode::BadSpectrum, msg.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.trace) {
    std::ostringstream msg;
    msg << "eigenvalues sum to " << sum << ", not 1";
    throw Error(ErrorCode::BadSpectrum, msg.str());
  }
  if (!has_orthonormal_columns(basis, tol.basis)) {
    throw Error(ErrorCode::BadBasis, "basis columns are not orthonormal");
  }

  DensityMatrix rho;
  rho.basis_ = basis;
  rho.weights_ = Eigen::Map<const RealVector>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  rho.matrix_ = basis * rho.weights_.cast<Complex>().asDiagonal() * basis.adjoint();
  rho.matrix_ = 0.5 * (rho.matrix_ + rho.matrix_.adjoint()).eval();

  const int n = static_cast<int>(weights.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weights[a] > weights[b]; });
  rho.spectrum_.eigenvalues.resize(n);
  rho.spectrum_.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    rho.spectrum_.eigenvalues(k) = weights[order[k]];
    rho.spectrum_.eigenvectors.col(k) = basis.col(order[k]);
  }
  fix_column_gauge(rho.spectrum_.eigenvectors);
  rho.finish(tol);
  return rho;
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, const DensityTolerances& tol) {
  require_square_finite(m, "density matrix");
  if (!is_hermitian(m, tol.trace)) throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream msg;
    msg << "trace " << tr << " differs from 1";
    throw Error(ErrorCode::BadSpectrum, msg.str());
  }
  DensityMatrix rho;
  rho.spectrum_ = eig_hermitian(m, tol.trace);
  for (Eigen::Index k = 0; k < rho.spectrum_.eigenvalues.size(); ++k) {
    double& w = rho.spectrum_.eigenvalues(k);
    if (w < -tol.rank) {
      std::ostringstream msg;
      msg << "eigenvalue " << w << " is negative";
      throw Error(ErrorCode::BadSpectrum, msg.str());
    }
    w = std::max(w, 0.0);
  }
  rho.matrix_ = 0.5 * (m + m.adjoint());
  rho.basis_ = rho.spectrum_.eigenvectors;
  rho.weights_ = rho.spectrum_.eigenvalues;
  rho.finish(tol);
  return rho;
}

void DensityMatrix::finish(const DensityTolerances& tol) {
  const RealVector& ev = spectrum_.eigenvalues;  // descending
  rank_ = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > tol.rank) ++rank_;
  }
  nondegenerate_ = true;
  for (int k = 0; k + 1 < rank_; ++k) {
    if (ev(k) - ev(k + 1) <= tol.gap) nondegenerate_ = false;
  }
}

ComplexMatrix DensityMatrix::root(int l) const {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "root order must be >= 1");
  if (l == 1) return matrix_;
  ComplexVector roots(weights_.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k) roots(k) = root_of(weights_(k), l);
  return basis_ * roots.asDiagonal() * basis_.adjoint();
}

DensityMatrix make_density(std::span<const double> eigenvalues, const ComplexMatrix& basis) {
  return DensityMatrix::from_spectrum(eigenvalues, basis);
}

ComplexMatrix computational_basis(int n) { return identity(n); }

std::vector<int> cyclic_pairing(int n) {
  std::vector<int> p(n);
  for (int k = 0; k < n; ++k) p[k] = (k + 1) % n;
  return p;
}

DensityMatrix quasi_complement(const DensityMatrix& rho, std::span<const int> pairing, bool allow_degenerate) {
  const int n = rho.dim();
  if (n < 2) throw Error(ErrorCode::BadPairing, "a quasi-orthogonal complement needs dimension >= 2");
  std::vector<int> p = pairing.empty() ? cyclic_pairing(n) : std::vector<int>(pairing.begin(), pairing.end());
  if (static_cast<int>(p.size()) != n) throw Error(ErrorCode::BadPairing, "pairing length differs from dimension");
  std::vector<bool> seen(n, false);
  for (int k = 0; k < n; ++k) {
    if (p[k] < 0 || p[k] >= n || seen[p[k]]) throw Error(ErrorCode::BadPairing, "pairing is not a permutation");
    if (p[k] == k) {
      std::ostringstream msg;
      msg << "pairing fixes index " << k;
      throw Error(ErrorCode::BadPairing, msg.str());
    }
    seen[p[k]] = true;
  }
  if (!allow_degenerate && !rho.nondegenerate()) {
    throw Error(ErrorCode::Degenerate, "state is degenerate on its support");
  }

  std::vector<double> moved(n, 0.0);
  for (int k = 0; k < n; ++k) moved[p[k]] = rho.weights()(k);
  return DensityMatrix::from_spectrum(moved, rho.basis());
}

double QuasiOrthogonalFamily::weight(int member, int index) const {
  const int n = dim();
  return eigenvalues(((index - shifts.at(member)) % n + n) % n);
}

QuasiOrthogonalFamily cyclic_family(std::span<const double> eigenvalues, const ComplexMatrix& basis) {
  QuasiOrthogonalFamily family;
  const DensityMatrix first = DensityMatrix::from_spectrum(eigenvalues, basis);
  if (!first.nondegenerate()) throw Error(ErrorCode::Degenerate, "cyclic family needs a nondegenerate spectrum");
  const int n = first.dim();
  family.basis = basis;
  family.eigenvalues = first.weights();
  family.members.reserve(n);
  for (int j = 0; j < n; ++j) {
    family.shifts.push_back(j);
    if (j == 0) {
      family.members.push_back(first);
      continue;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = family.weight(j, i);
    family.members.push_back(DensityMatrix::from_spectrum(w, basis));
  }
  return family;
}

double bures_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::ShapeMismatch, "states of different dimension");
  const ComplexMatrix s = rho.root(2);
  const ComplexMatrix inner = s * sigma.matrix() * s;
  const double root_trace = psd_root(0.5 * (inner + inner.adjoint()), 2).trace().real();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

bool diagonal_in(const ComplexMatrix& state, const ComplexMatrix& basis, double tol) {
  if (state.rows() != basis.rows()) return false;
  ComplexMatrix m = basis.adjoint() * state * basis;
  m.diagonal().setZero();
  return max_abs(m) <= tol;
}

}  // namespace mixphase
