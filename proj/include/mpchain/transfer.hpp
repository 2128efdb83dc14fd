#pragma once

// Transfer matrices E = sum_m A_m (x) A_m and operator-dressed variants.
//
// Kronecker convention, fixed project-wide: row index (a, c) -> 2a + c,
// first factor is the bra-side chain copy (site matrices are real, so
// conjugation is the identity).

#include <array>
#include <complex>

#include "mpchain/site_matrices.hpp"
#include "mpchain/types.hpp"

namespace mpchain {

Mat4 kron2(const Mat2& a, const Mat2& b);

struct TransferMatrix {
  Mat4 m = Mat4::Zero();
  bool dressed = false;
  Mat3 dressing = Mat3::Zero();  // recorded operator when dressed
  ModelParams params;

  // Exact for the plain E of this family: the matrix splits into the
  // {0,3} block [[1, 2g^2], [2, 1]] and the diagonal {1,2} block, so the
  // spectrum {1 +- 2|g|, sigma, sigma} comes from a closed 2x2 formula even
  // at the defective point g = 0. Dressed matrices use a general eigensolve.
  std::array<std::complex<double>, 4> eigenvalues() const;
};

TransferMatrix transfer_matrix(const SiteMatrices& mats);

// E_O = sum_{i,j} <i|O|j> A_i (x) A_j, same Kronecker convention.
TransferMatrix operator_transfer_matrix(const SiteMatrices& mats, const Mat3& op);

struct MatrixPower {
  Mat4 m = Mat4::Identity();
  double log_scale = 0.0;  // true power = m * exp(log_scale)
};

// E^n by repeated squaring. When n ln(lambda1) would leave double range the
// result is returned scaled by lambda1^{-n} with log_scale = n ln(lambda1);
// dressed matrices fall back to per-squaring renormalization.
MatrixPower transfer_power(const TransferMatrix& e, long n);

// (E / lambda1)^n for the plain transfer matrix; the workhorse behind all
// finite-N contractions (entries stay O(1) for any n).
Mat4 normalized_transfer_power(const TransferMatrix& e, long n);

}  // namespace mpchain
