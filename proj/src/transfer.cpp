#include "mpchain/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mpchain {

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

TransferMatrix transfer_matrix(const SiteMatrices& mats) {
  TransferMatrix e;
  e.m = kron2(mats.a_plus, mats.a_plus) + kron2(mats.a_zero, mats.a_zero) +
        kron2(mats.a_minus, mats.a_minus);
  e.params = mats.params;
  return e;
}

TransferMatrix operator_transfer_matrix(const SiteMatrices& mats, const Mat3& op) {
  TransferMatrix e;
  e.m = Mat4::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (op(i, j) == 0.0) continue;
      e.m += op(i, j) * kron2(mats.by_index(i), mats.by_index(j));
    }
  e.dressed = true;
  e.dressing = op;
  e.params = mats.params;
  return e;
}

std::array<std::complex<double>, 4> TransferMatrix::eigenvalues() const {
  if (!dressed) {
    // Verify the block split before using the closed 2x2 formula.
    double off = 0.0;
    for (int i : {0, 3})
      for (int j : {1, 2}) off = std::max({off, std::abs(m(i, j)), std::abs(m(j, i))});
    off = std::max({off, std::abs(m(1, 2)), std::abs(m(2, 1))});
    if (off <= 1e-14) {
      const double p = 0.5 * (m(0, 0) + m(3, 3));
      const double root = std::sqrt(std::max(0.0, m(0, 3) * m(3, 0)));
      return {std::complex<double>(p + root), std::complex<double>(p - root),
              std::complex<double>(m(1, 1)), std::complex<double>(m(2, 2))};
    }
  }
  Eigen::EigenSolver<Mat4> es(m);
  std::array<std::complex<double>, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

namespace {

MatrixPower squared_power(Mat4 base, long n, double base_log_scale) {
  // Exponentiation by squaring with max-abs renormalization; keeps entries
  // finite for dressed matrices of arbitrary scale.
  MatrixPower result;
  result.m = Mat4::Identity();
  result.log_scale = 0.0;
  double base_scale = base_log_scale;
  long k = n;
  while (k > 0) {
    if (k & 1) {
      result.m = result.m * base;
      result.log_scale += base_scale;
      double mx = result.m.cwiseAbs().maxCoeff();
      if (mx > 1e100 || (mx > 0.0 && mx < 1e-100)) {
        result.m /= mx;
        result.log_scale += std::log(mx);
      }
    }
    k >>= 1;
    if (k > 0) {
      base = base * base;
      base_scale *= 2.0;
      double mx = base.cwiseAbs().maxCoeff();
      if (mx > 1e100 || (mx > 0.0 && mx < 1e-100)) {
        base /= mx;
        base_scale += std::log(mx);
      }
    }
  }
  return result;
}

}  // namespace

MatrixPower transfer_power(const TransferMatrix& e, long n) {
  if (n < 0) throw std::invalid_argument("transfer power requires n >= 0");
  if (!e.m.allFinite()) throw std::invalid_argument("transfer matrix has non-finite entries");
  if (n == 0) return MatrixPower{};  // identity by convention
  if (n == 1) return MatrixPower{e.m, 0.0};

  const double lam1 = e.params.lambda1();
  if (!e.dressed && static_cast<double>(n) * std::log(lam1) > 300.0) {
    MatrixPower p;
    p.m = Mat4::Identity();
    Mat4 scaled = e.m / lam1;
    long k = n;
    Mat4 base = scaled;
    while (k > 0) {
      if (k & 1) p.m = p.m * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    p.log_scale = static_cast<double>(n) * std::log(lam1);
    return p;
  }
  return squared_power(e.m, n, 0.0);
}

Mat4 normalized_transfer_power(const TransferMatrix& e, long n) {
  if (n < 0) throw std::invalid_argument("transfer power requires n >= 0");
  Mat4 result = Mat4::Identity();
  Mat4 base = e.m / e.params.lambda1();
  long k = n;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace mpchain
