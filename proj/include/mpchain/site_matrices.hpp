#pragma once

// Site matrices of the one-parameter spin-1 chain family and their symmetry
// checks. Bond dimension is 2; the three 2x2 matrices are indexed by the spin
// projection m in {+1, 0, -1}.

#include "mpchain/types.hpp"

namespace mpchain {

// Spin-1 operators on the physical space, basis order (+1, 0, -1).
namespace spin {
Mat3 identity();
Mat3 sz();
Mat3 sz2();
Mat3 sx();
}  // namespace spin

struct SiteMatrices {
  Mat2 a_plus;   // m = +1, strictly upper triangular
  Mat2 a_zero;   // m = 0, diag(1, sigma)
  Mat2 a_minus;  // m = -1, strictly lower triangular
  ModelParams params;

  const Mat2& for_spin(int m) const;
  // i in {0, 1, 2} per the fixed basis order.
  const Mat2& by_index(int i) const;
};

// A_+1 = -sqrt(2) g sigma_+, A_0 = diag(1, sigma), A_-1 = sqrt(2) sigma_-.
SiteMatrices build_site_matrices(const ModelParams& params);

// Spin-flip intertwiner X: X A_m X^{-1} = sigma A_{-m}. Singular at g = 0,
// so residuals below use the multiplied form X A_m - sigma A_{-m} X.
Mat2 spin_flip_matrix(const ModelParams& params);

struct SymmetryReport {
  double sz_commutator_residual = 0.0;  // [S_z^bond, A_m] - m A_m
  double spin_flip_residual = 0.0;      // X A_m - sigma A_{-m} X
  double parity_residual = 0.0;         // A_m^T - sigma P A_m P^{-1}
  Mat2 parity_op = Mat2::Identity();    // best signed 2x2 permutation found

  double max_residual() const;
  bool ok(double tol = 1e-13) const { return max_residual() <= tol; }
};

// Residuals are reported, not thrown; a large residual signals a
// construction bug upstream.
SymmetryReport check_symmetries(const SiteMatrices& mats);

}  // namespace mpchain
