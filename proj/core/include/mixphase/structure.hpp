#pragma once

#include <span>
#include <vector>

#include "mixphase/algebra.hpp"
#include "mixphase/states.hpp"

namespace mixphase {

/// Split of a basis-permuting transport unitary into one cyclic block and
/// a diagonal remainder, U_par = u_p (+) u_d.
///
/// Labels are 0-based basis indices. `cycle_labels` is ordered c_1..c_m so
/// that U maps c_1 -> c_m -> c_{m-1} -> ... -> c_2 -> c_1, starting from the
/// smallest label. u_p is the m x m block of B^dagger U B on those labels in
/// that order; u_d holds the diagonal elements U_kk on `diagonal_labels`.
struct DecompositionReport {
  bool is_permuting = false;
  int m = 0;
  std::vector<int> permutation;  // basis index k -> image index
  std::vector<int> cycle_labels;
  std::vector<int> diagonal_labels;
  ComplexMatrix u_p;
  std::vector<Complex> u_d;
  ComplexMatrix in_basis;  // B^dagger U B
  ComplexMatrix basis;
  double reassembly_residual = 0.0;
};

inline constexpr double kPermutationTol = 1e-8;

/// A basis ray counts as mapped onto another when the dominant overlap
/// magnitude exceeds 1 - tol. Non-permuting unitaries yield
/// is_permuting = false; more than one nontrivial cycle throws
/// MultipleCycles.
DecompositionReport decompose(const ComplexMatrix& transport, const ComplexMatrix& basis,
                              double tol = kPermutationTol);

/// Cyclic-block contribution Tr(u_p R_j1 u_p R_j2 ... u_p R_jl), where R_j
/// is the l-th root of member j restricted to the cycle. Exactly zero unless
/// m >= 2 and m divides l.
Complex p_term(const DecompositionReport& report, const QuasiOrthogonalFamily& family, std::span<const int> indices);

/// Diagonal-block contribution sum_k (U_kk)^l (lambda_{k,j1} ... lambda_{k,jl})^(1/l).
Complex d_term(const DecompositionReport& report, const QuasiOrthogonalFamily& family, std::span<const int> indices);

/// |Tr(U R_j1 ... U R_jl) - (P + D)| with the full trace taken densely.
double split_identity_check(const ComplexMatrix& transport, const QuasiOrthogonalFamily& family,
                            std::span<const int> indices);

/// (-1)^(m-1) det u_p.
Complex signed_cycle_determinant(const DecompositionReport& report);

}  // namespace mixphase
