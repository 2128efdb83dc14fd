#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace mpchain {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Vec9 = Eigen::Matrix<double, 9, 1>;

// Physical basis order is (+1, 0, -1) <-> indices (0, 1, 2), project-wide.
inline constexpr int kPhysDim = 3;
inline constexpr int kBondDim = 2;

enum class LogBase { two, e };

inline double log_in_base(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

struct ModelParams {
  double g = 0.0;
  int sigma = +1;

  void validate() const {
    if (sigma != 1 && sigma != -1)
      throw std::invalid_argument("sigma must be +1 or -1");
    if (!std::isfinite(g))
      throw std::invalid_argument("g must be finite");
  }

  double abs_g() const { return std::abs(g); }
  double sign_g() const { return g > 0.0 ? 1.0 : (g < 0.0 ? -1.0 : 0.0); }

  // Dominant / subdominant transfer eigenvalues 1 + 2|g|, 1 - 2|g|.
  double lambda1() const { return 1.0 + 2.0 * std::abs(g); }
  double lambda2() const { return 1.0 - 2.0 * std::abs(g); }

  // At g = 0, sigma = -1 on an odd ring the raw state vanishes identically
  // (Z = 0) and every ratio becomes 0/0. Callers branch to the g -> 0 limit,
  // which is the alternating two-excitation state handled in entanglement.
  bool singular_at(long n_sites) const {
    return g == 0.0 && sigma == -1 && (n_sites % 2 != 0);
  }

  bool operator==(const ModelParams&) const = default;
};

// value = mantissa * exp(log_scale); keeps quantities like Z finite for any N.
struct ScaledScalar {
  double mantissa = 0.0;
  double log_scale = 0.0;
  double value() const { return mantissa * std::exp(log_scale); }
};

}  // namespace mpchain
