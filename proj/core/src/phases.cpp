#include "mixphase/phases.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mixphase {

namespace {

void require_transport(const ComplexMatrix& transport, int n) {
  require_square_finite(transport, "transport unitary");
  if (transport.rows() != n) throw Error(ErrorCode::ShapeMismatch, "transport unitary and state differ in dimension");
}

void require_nondegenerate(const DensityMatrix& rho, const PhaseOptions& opts) {
  if (!opts.allow_degenerate && !rho.nondegenerate()) {
    throw Error(ErrorCode::Degenerate, "state has a degenerate spectrum on its support");
  }
}

}  // namespace

PhaseResult phase_factor(Complex z, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "visibility floor must be > 0");
  PhaseResult r;
  r.trace_value = z;
  r.magnitude = std::abs(z);
  r.tol_used = tol;
  if (r.magnitude > tol) {
    r.phase_factor = z / r.magnitude;
    r.phase_angle = principal_arg(z);
  }
  return r;
}

PhaseResult sigma(int j, int k, const ComplexMatrix& transport, const ComplexMatrix& basis, double tol) {
  const int n = static_cast<int>(basis.cols());
  if (j < 0 || k < 0 || j >= n || k >= n) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  require_transport(transport, static_cast<int>(basis.rows()));
  return phase_factor(basis.col(j).dot(transport * basis.col(k)), tol);
}

PhaseResult gamma_pure(std::span<const int> indices, const ComplexMatrix& transport, const ComplexMatrix& basis,
                       double tol) {
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one index");
  if (std::set<int>(indices.begin(), indices.end()).size() != indices.size()) {
    throw Error(ErrorCode::InvalidArgument, "indices must be distinct");
  }
  Complex product{1.0, 0.0};
  Complex factor_product{1.0, 0.0};
  bool all_defined = true;
  const std::size_t l = indices.size();
  for (std::size_t a = 0; a < l; ++a) {
    const PhaseResult s = sigma(indices[a], indices[(a + 1) % l], transport, basis, tol);
    product *= s.trace_value;
    if (s.defined()) {
      factor_product *= *s.phase_factor;
    } else {
      all_defined = false;
    }
  }
  PhaseResult r;
  r.trace_value = product;
  r.magnitude = std::abs(product);
  r.tol_used = tol;
  if (all_defined) {
    r.phase_factor = factor_product / std::abs(factor_product);
    r.phase_angle = principal_arg(factor_product);
  }
  return r;
}

Complex cyclic_trace(const ComplexMatrix& transport, std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one factor");
  ComplexMatrix acc = transport * factors[0];
  for (std::size_t a = 1; a < factors.size(); ++a) acc = acc * transport * factors[a];
  return acc.trace();
}

PhaseResult gamma_diag(const DensityMatrix& rho, const ComplexMatrix& transport, const PhaseOptions& opts) {
  require_nondegenerate(rho, opts);
  require_transport(transport, rho.dim());
  const ComplexMatrix factors[] = {rho.root(1)};
  return phase_factor(cyclic_trace(transport, factors), opts.tol);
}

PhaseResult gamma_offdiag(const DensityMatrix& rho, const DensityMatrix& rho_perp, const ComplexMatrix& transport,
                          const PhaseOptions& opts) {
  require_nondegenerate(rho, opts);
  require_nondegenerate(rho_perp, opts);
  require_transport(transport, rho.dim());
  if (rho_perp.dim() != rho.dim()) throw Error(ErrorCode::ShapeMismatch, "states differ in dimension");

  if (!opts.allow_degenerate) {
    // rho_perp must be diagonal in rho's basis with every nonzero weight of
    // rho moved to a different basis vector.
    if (!diagonal_in(rho_perp.matrix(), rho.basis(), opts.basis_tol)) {
      throw Error(ErrorCode::NotQuasiOrthogonal, "complement is not diagonal in the state's eigenbasis");
    }
    const ComplexMatrix own = rho.in_basis(rho.basis());
    const ComplexMatrix perp = rho_perp.in_basis(rho.basis());
    std::vector<double> a, b;
    for (int k = 0; k < rho.dim(); ++k) {
      const double wk = own(k, k).real();
      const double pk = perp(k, k).real();
      a.push_back(wk);
      b.push_back(pk);
      if (wk > 1e-10 && std::abs(wk - pk) <= opts.basis_tol) {
        std::ostringstream msg;
        msg << "eigenvalue " << wk << " sits on the same basis vector in both states";
        throw Error(ErrorCode::NotQuasiOrthogonal, msg.str());
      }
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::abs(a[k] - b[k]) > opts.basis_tol) {
        throw Error(ErrorCode::NotQuasiOrthogonal, "states do not share an eigenvalue multiset");
      }
    }
  }
  const ComplexMatrix factors[] = {rho.root(2), rho_perp.root(2)};
  return phase_factor(cyclic_trace(transport, factors), opts.tol);
}

PhaseResult gamma_l(std::span<const DensityMatrix> members, const ComplexMatrix& transport, const PhaseOptions& opts) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one state");
  const int n = members.front().dim();
  const int l = static_cast<int>(members.size());
  if (l > n) throw Error(ErrorCode::InvalidArgument, "cycle length exceeds the Hilbert-space dimension");
  require_transport(transport, n);
  std::vector<ComplexMatrix> roots;
  roots.reserve(members.size());
  for (const auto& m : members) {
    require_nondegenerate(m, opts);
    if (m.dim() != n) throw Error(ErrorCode::ShapeMismatch, "states differ in dimension");
    if (!diagonal_in(m.matrix(), members.front().basis(), opts.basis_tol)) {
      throw Error(ErrorCode::BasisMismatch, "states do not share an eigenbasis");
    }
    roots.push_back(m.root(l));
  }
  return phase_factor(cyclic_trace(transport, roots), opts.tol);
}

PhaseResult gamma_l(const QuasiOrthogonalFamily& family, std::span<const int> indices, const ComplexMatrix& transport,
                    const PhaseOptions& opts) {
  if (std::set<int>(indices.begin(), indices.end()).size() != indices.size()) {
    throw Error(ErrorCode::InvalidArgument, "member indices must be distinct");
  }
  std::vector<DensityMatrix> picked;
  for (int j : indices) {
    if (j < 0 || j >= family.size()) throw Error(ErrorCode::InvalidArgument, "member index out of range");
    picked.push_back(family.members[j]);
  }
  return gamma_l(picked, transport, opts);
}

}  // namespace mixphase
