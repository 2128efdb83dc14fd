#pragma once

// Exact dense representation of the ring state at small N. Amplitude index
// is the site-major base-3 encoding of (i_1 ... i_N): site 1 is the most
// significant digit, digit values 0 <-> |+1>, 1 <-> |0>, 2 <-> |-1>.

#include <vector>

#include "mpchain/types.hpp"

namespace mpchain {

inline constexpr long kDenseSiteCap = 12;  // 3^12 ~ 531k amplitudes

struct DenseState {
  std::vector<double> amplitudes;  // normalized
  long n_sites = 0;
  ModelParams params;
  double raw_norm = 0.0;  // norm before normalization; sqrt(Z) for exact states
};

long pow3(long n);
int digit_at(long index, int site, long n_sites);  // site is 1-based

// psi_{i1...iN} = tr(A_{i1} ... A_{iN}) / sqrt(Z). Throws at the singular
// family point (g = 0, sigma = -1, odd N) where the raw state vanishes.
DenseState dense_state(const ModelParams& params, long n_sites);

// Exact partial trace onto the listed sites (1-based, distinct, at most 4).
// Output basis: listed-site order major, then the fixed local order.
Eigen::MatrixXd dense_rdm(const DenseState& state, const std::vector<int>& sites);

}  // namespace mpchain
