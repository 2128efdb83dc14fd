#include "mpchain/site_matrices.hpp"

#include <array>
#include <cmath>

namespace mpchain {

namespace spin {

Mat3 identity() { return Mat3::Identity(); }

Mat3 sz() {
  Mat3 m = Mat3::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

Mat3 sz2() {
  Mat3 m = Mat3::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  return m;
}

Mat3 sx() {
  Mat3 m = Mat3::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 2) = s;
  m(2, 1) = s;
  return m;
}

}  // namespace spin

const Mat2& SiteMatrices::for_spin(int m) const {
  switch (m) {
    case +1: return a_plus;
    case 0: return a_zero;
    case -1: return a_minus;
    default: throw std::invalid_argument("spin projection must be +1, 0 or -1");
  }
}

const Mat2& SiteMatrices::by_index(int i) const {
  switch (i) {
    case 0: return a_plus;
    case 1: return a_zero;
    case 2: return a_minus;
    default: throw std::invalid_argument("physical index must be 0, 1 or 2");
  }
}

SiteMatrices build_site_matrices(const ModelParams& params) {
  params.validate();
  const double s2 = std::sqrt(2.0);
  SiteMatrices mats;
  mats.a_plus << 0.0, -s2 * params.g, 0.0, 0.0;
  mats.a_zero << 1.0, 0.0, 0.0, static_cast<double>(params.sigma);
  mats.a_minus << 0.0, 0.0, s2, 0.0;
  mats.params = params;
  return mats;
}

Mat2 spin_flip_matrix(const ModelParams& params) {
  Mat2 x;
  x << 0.0, -params.sigma * params.g, 1.0, 0.0;
  return x;
}

double SymmetryReport::max_residual() const {
  return std::max({sz_commutator_residual, spin_flip_residual, parity_residual});
}

namespace {

// The 8 signed 2x2 permutation matrices, fixed order so the reported parity
// operator is deterministic.
std::array<Mat2, 8> signed_permutations() {
  std::array<Mat2, 8> out;
  int k = 0;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) {
      Mat2 d;
      d << a, 0.0, 0.0, b;
      out[k++] = d;
      Mat2 x;
      x << 0.0, a, b, 0.0;
      out[k++] = x;
    }
  return out;
}

}  // namespace

SymmetryReport check_symmetries(const SiteMatrices& mats) {
  const ModelParams& p = mats.params;
  SymmetryReport rep;

  Mat2 sz_bond;
  sz_bond << 0.5, 0.0, 0.0, -0.5;
  for (int m : {+1, 0, -1}) {
    const Mat2& a = mats.for_spin(m);
    Mat2 res = sz_bond * a - a * sz_bond - static_cast<double>(m) * a;
    rep.sz_commutator_residual =
        std::max(rep.sz_commutator_residual, res.cwiseAbs().maxCoeff());
  }

  const Mat2 x = spin_flip_matrix(p);
  for (int m : {+1, 0, -1}) {
    Mat2 res = x * mats.for_spin(m) -
               static_cast<double>(p.sigma) * mats.for_spin(-m) * x;
    rep.spin_flip_residual =
        std::max(rep.spin_flip_residual, res.cwiseAbs().maxCoeff());
  }

  rep.parity_residual = std::numeric_limits<double>::infinity();
  for (const Mat2& pi : signed_permutations()) {
    const Mat2 pi_inv = pi.inverse();
    double worst = 0.0;
    for (int m : {+1, 0, -1}) {
      const Mat2& a = mats.for_spin(m);
      Mat2 res = a.transpose() -
                 static_cast<double>(p.sigma) * pi * a * pi_inv;
      worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    if (worst < rep.parity_residual) {
      rep.parity_residual = worst;
      rep.parity_op = pi;
    }
  }

  return rep;
}

}  // namespace mpchain
