#include "mpchain/dense_state.hpp"

#include <algorithm>
#include <cmath>

#include "mpchain/site_matrices.hpp"

namespace mpchain {

long pow3(long n) {
  long p = 1;
  for (long i = 0; i < n; ++i) p *= 3;
  return p;
}

int digit_at(long index, int site, long n_sites) {
  return static_cast<int>(index / pow3(n_sites - site)) % 3;
}

DenseState dense_state(const ModelParams& params, long n_sites) {
  params.validate();
  if (n_sites < 2 || n_sites > kDenseSiteCap)
    throw std::invalid_argument("dense state requires 2 <= N <= 12");

  const SiteMatrices mats = build_site_matrices(params);
  const long dim = pow3(n_sites);

  DenseState state;
  state.amplitudes.assign(dim, 0.0);
  state.n_sites = n_sites;
  state.params = params;

  // Trace of a product of N 2x2 matrices per amplitude; O(N 3^N) work.
  std::vector<long> strides(n_sites);
  for (long s = 0; s < n_sites; ++s) strides[s] = pow3(n_sites - 1 - s);
  for (long idx = 0; idx < dim; ++idx) {
    Mat2 prod = Mat2::Identity();
    for (long s = 0; s < n_sites; ++s) {
      const int d = static_cast<int>(idx / strides[s]) % 3;
      prod = prod * mats.by_index(d);
    }
    state.amplitudes[idx] = prod.trace();
  }

  double norm2 = 0.0;
  for (double a : state.amplitudes) norm2 += a * a;
  const double norm = std::sqrt(norm2);
  if (norm < 1e-12) {
    // g = 0, sigma = -1, odd N: every trace cancels. The g -> 0 limit state
    // exists and is produced by limiting_state instead.
    throw std::domain_error(
        "state vanishes identically at this family point; use the g -> 0 limit");
  }
  for (double& a : state.amplitudes) a /= norm;
  state.raw_norm = norm;
  return state;
}

Eigen::MatrixXd dense_rdm(const DenseState& state, const std::vector<int>& sites) {
  const long n = state.n_sites;
  if (sites.empty() || sites.size() > 4)
    throw std::invalid_argument("dense_rdm supports 1 to 4 sites");
  for (int s : sites)
    if (s < 1 || s > n) throw std::out_of_range("site index out of range");
  std::vector<int> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("sites must be distinct");

  const int k = static_cast<int>(sites.size());
  const long sub_dim = pow3(k);
  const long env_dim = pow3(n - k);

  // Reshape psi into M[sub, env]; rho = M M^T.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sub_dim, env_dim);
  std::vector<bool> listed(n + 1, false);
  for (int s : sites) listed[s] = true;

  for (long idx = 0; idx < pow3(n); ++idx) {
    long sub = 0;
    for (int s : sites) sub = 3 * sub + digit_at(idx, s, n);
    long env = 0;
    for (int s = 1; s <= n; ++s)
      if (!listed[s]) env = 3 * env + digit_at(idx, s, n);
    m(sub, env) = state.amplitudes[idx];
  }
  return m * m.transpose();
}

}  // namespace mpchain
