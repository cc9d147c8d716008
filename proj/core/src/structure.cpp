#include "mixphase/structure.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "mixphase/phases.hpp"

namespace mixphase {

namespace {

void require_family_match(const DecompositionReport& report, const QuasiOrthogonalFamily& family,
                          std::span<const int> indices) {
  if (!report.is_permuting) throw Error(ErrorCode::InvalidArgument, "transport unitary does not permute the basis");
  if (report.basis.rows() != family.basis.rows() || !approx_equal(report.basis, family.basis, 1e-10)) {
    throw Error(ErrorCode::BasisMismatch, "decomposition and family use different bases");
  }
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one member index");
  if (std::set<int>(indices.begin(), indices.end()).size() != indices.size()) {
    throw Error(ErrorCode::InvalidArgument, "member indices must be distinct");
  }
  for (int j : indices) {
    if (j < 0 || j >= family.size()) throw Error(ErrorCode::InvalidArgument, "member index out of range");
  }
}

double root_of(double w, int l) {
  if (w <= 0.0) return 0.0;
  return l == 1 ? w : l == 2 ? std::sqrt(w) : std::pow(w, 1.0 / l);
}

}  // namespace

DecompositionReport decompose(const ComplexMatrix& transport, const ComplexMatrix& basis, double tol) {
  require_square_finite(transport, "transport unitary");
  if (basis.rows() != transport.rows() || basis.cols() != transport.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "basis and transport unitary differ in dimension");
  }
  if (!has_orthonormal_columns(basis, 1e-10)) throw Error(ErrorCode::BadBasis, "basis columns are not orthonormal");
  if (!is_unitary(transport, 1e-9)) throw Error(ErrorCode::InvalidArgument, "transport operator is not unitary");

  const int n = static_cast<int>(basis.rows());
  DecompositionReport report;
  report.basis = basis;
  report.in_basis = basis.adjoint() * transport * basis;
  const ComplexMatrix& m = report.in_basis;

  std::vector<int> image(n, -1);
  std::vector<bool> hit(n, false);
  for (int k = 0; k < n; ++k) {
    Eigen::Index row = 0;
    const double dominant = m.col(k).cwiseAbs().maxCoeff(&row);
    if (dominant <= 1.0 - tol || hit[row]) return report;
    image[k] = static_cast<int>(row);
    hit[row] = true;
  }
  report.is_permuting = true;
  report.permutation = image;

  std::vector<bool> visited(n, false);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<int> orbit;
    for (int k = start; !visited[k]; k = image[k]) {
      visited[k] = true;
      orbit.push_back(k);
    }
    if (orbit.size() >= 2) cycles.push_back(orbit);
  }
  if (cycles.size() > 1) {
    std::ostringstream msg;
    msg << cycles.size() << " disjoint nontrivial cycles";
    throw Error(ErrorCode::MultipleCycles, msg.str());
  }

  if (!cycles.empty()) {
    // orbit is start, pi(start), pi^2(start), ...; the canonical order walks it backwards.
    const std::vector<int>& orbit = cycles.front();
    report.m = static_cast<int>(orbit.size());
    report.cycle_labels.push_back(orbit.front());
    for (int a = report.m - 1; a >= 1; --a) report.cycle_labels.push_back(orbit[a]);
  }
  std::vector<bool> in_cycle(n, false);
  for (int c : report.cycle_labels) in_cycle[c] = true;
  for (int k = 0; k < n; ++k) {
    if (!in_cycle[k]) {
      report.diagonal_labels.push_back(k);
      report.u_d.push_back(m(k, k));
    }
  }
  report.u_p = ComplexMatrix::Zero(report.m, report.m);
  for (int a = 0; a < report.m; ++a) {
    for (int b = 0; b < report.m; ++b) report.u_p(a, b) = m(report.cycle_labels[a], report.cycle_labels[b]);
  }

  ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < report.m; ++a) {
    for (int b = 0; b < report.m; ++b) rebuilt(report.cycle_labels[a], report.cycle_labels[b]) = report.u_p(a, b);
  }
  for (std::size_t d = 0; d < report.diagonal_labels.size(); ++d) {
    rebuilt(report.diagonal_labels[d], report.diagonal_labels[d]) = report.u_d[d];
  }
  report.reassembly_residual = max_abs(rebuilt - m);
  return report;
}

Complex p_term(const DecompositionReport& report, const QuasiOrthogonalFamily& family, std::span<const int> indices) {
  require_family_match(report, family, indices);
  const int l = static_cast<int>(indices.size());
  if (report.m < 2 || l % report.m != 0) return {0.0, 0.0};
  std::vector<ComplexMatrix> roots;
  roots.reserve(indices.size());
  for (int j : indices) {
    ComplexVector diag(report.m);
    for (int a = 0; a < report.m; ++a) diag(a) = root_of(family.weight(j, report.cycle_labels[a]), l);
    roots.emplace_back(diag.asDiagonal());
  }
  return cyclic_trace(report.u_p, roots);
}

Complex d_term(const DecompositionReport& report, const QuasiOrthogonalFamily& family, std::span<const int> indices) {
  require_family_match(report, family, indices);
  const int l = static_cast<int>(indices.size());
  Complex sum{0.0, 0.0};
  for (std::size_t d = 0; d < report.diagonal_labels.size(); ++d) {
    const int k = report.diagonal_labels[d];
    double weight = 1.0;
    for (int j : indices) weight *= root_of(family.weight(j, k), l);
    if (weight == 0.0) continue;
    sum += std::pow(report.u_d[d], l) * weight;
  }
  return sum;
}

double split_identity_check(const ComplexMatrix& transport, const QuasiOrthogonalFamily& family,
                            std::span<const int> indices) {
  const DecompositionReport report = decompose(transport, family.basis);
  const Complex split = p_term(report, family, indices) + d_term(report, family, indices);
  std::vector<ComplexMatrix> roots;
  for (int j : indices) roots.push_back(family.members[j].root(static_cast<int>(indices.size())));
  return std::abs(cyclic_trace(transport, roots) - split);
}

Complex signed_cycle_determinant(const DecompositionReport& report) {
  if (report.m < 2) return {0.0, 0.0};
  const double sign = (report.m - 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * report.u_p.determinant();
}

}  // namespace mixphase
