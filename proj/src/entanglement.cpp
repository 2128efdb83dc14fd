#include "mpchain/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace mpchain {

Mat9 partial_transpose_first(const Mat9& rho) {
  Mat9 out;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          out(3 * i + k, 3 * j + l) = rho(3 * j + k, 3 * i + l);
  return out;
}

Mat9 partial_transpose_second(const Mat9& rho) {
  Mat9 out;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          out(3 * i + k, 3 * j + l) = rho(3 * i + l, 3 * j + k);
  return out;
}

namespace {

void validate_density_matrix(const Mat9& rho) {
  if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("two-site matrix is not symmetric");
  if (std::abs(rho.trace() - 1.0) > 1e-8)
    throw std::invalid_argument("two-site matrix trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<Mat9> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -1e-9)
    throw std::invalid_argument("two-site matrix has a negative eigenvalue");
}

}  // namespace

NegativityResult negativity(const TwoSiteRDM& rdm) {
  validate_density_matrix(rdm.rho);
  const Mat9 pt = partial_transpose_first(rdm.rho);
  Eigen::SelfAdjointEigenSolver<Mat9> es(pt, Eigen::EigenvaluesOnly);

  NegativityResult out;
  out.r = rdm.r;
  out.n_sites = rdm.n_sites;
  out.params = rdm.params;
  double abs_sum = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double w = es.eigenvalues()(i);
    out.pt_eigenvalues[i] = w;
    abs_sum += std::abs(w);
    if (w < -kNegativityTol) {
      out.negative_set.push_back(w);
      out.value += -w;
    }
  }
  const double trace_norm_form = 0.5 * (abs_sum - 1.0);
  if (std::abs(out.value - trace_norm_form) > 1e-11)
    throw std::runtime_error("negativity definitions disagree beyond tolerance");
  return out;
}

PtSpectrum pt_spectrum_thermo(const ModelParams& p, int r) {
  const RdmElements el = thermo_rdm_elements(p, r);
  const double w = p.abs_g() * el.gamma;
  PtSpectrum spec;
  spec.omega[0] = el.alpha;
  spec.omega[1] = el.beta;
  spec.omega[2] = el.beta;
  spec.omega[3] = w + el.delta;
  spec.omega[4] = w + el.delta;
  spec.omega[5] = w - el.delta;
  spec.omega[6] = w - el.delta;
  const double half_sum = 0.5 * (el.alpha + el.gamma + el.nu);
  const double root = 0.5 * std::sqrt((el.alpha - el.gamma + el.nu) *
                                          (el.alpha - el.gamma + el.nu) +
                                      8.0 * el.mu * el.mu);
  spec.omega[7] = half_sum + root;
  spec.omega[8] = half_sum - root;

  // Guard the closed forms against the dense route.
  const TwoSiteRDM rdm = two_site_rdm_thermo(p, r);
  Eigen::SelfAdjointEigenSolver<Mat9> es(partial_transpose_first(rdm.rho),
                                         Eigen::EigenvaluesOnly);
  std::array<double, 9> sorted = spec.omega;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 9; ++i)
    if (std::abs(sorted[i] - es.eigenvalues()(i)) > 1e-12)
      throw std::runtime_error(
          "closed-form partial-transpose spectrum disagrees with dense");
  return spec;
}

namespace {

// omega9 < 0 at separation r, i.e. alpha gamma < 2 mu^2, evaluated in log
// form so arbitrarily large r is fine:
//   lambda1^{r-2} - lambda2^{r-2} < 2 lambda1^{2-r}.
bool omega9_negative(const ModelParams& p, long r) {
  if (r == 2) return p.g != 0.0;
  const double l1 = std::log(p.lambda1());
  const double q = p.lambda2() / p.lambda1();  // |q| < 1 for g != 0
  const double qr = std::pow(q, static_cast<double>(r - 2));
  const double lhs = static_cast<double>(r - 2) * l1 + std::log1p(-qr);
  const double rhs = std::log(2.0) + (2.0 - static_cast<double>(r)) * l1;
  return lhs < rhs;
}

}  // namespace

EntanglementRange entanglement_range(const ModelParams& p) {
  p.validate();
  if (p.g == 0.0)
    throw std::domain_error("infinite range at criticality is not representable");
  EntanglementRange out;
  out.approx = std::log(3.0) / (4.0 * p.abs_g()) + 2.0;

  if (p.abs_g() < 0.5) {
    // lambda2 > 0: the criterion flips exactly once; bracket and bisect.
    long lo = 2;  // negative
    long hi = 4;
    while (omega9_negative(p, hi)) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (omega9_negative(p, mid) ? lo : hi) = mid;
    }
    out.exact = lo;
  } else {
    // lambda2 <= 0 alternates in sign; the range is a handful of sites, scan.
    long last = 2;
    for (long r = 3; r <= 64; ++r)
      if (omega9_negative(p, r)) last = r;
    out.exact = last;
  }
  return out;
}

std::optional<long> max_entangled_system_size(const ModelParams& p, int r,
                                              long cap) {
  p.validate();
  if (r < 2) throw std::invalid_argument("separation r must be >= 2");
  if (cap < r) throw std::invalid_argument("scan cap smaller than r");
  long best = -1;
  for (long n = std::max<long>(2, r); n <= cap; ++n) {
    const double e = negativity(two_site_rdm(p, r, n)).value;
    if (e > kNegativityTol) best = n;
  }
  if (best == cap) throw ScanCapReached(cap);
  if (best < 0) return std::nullopt;
  return best;
}

DenseState limiting_state(const ModelParams& p, long n, LimitBranch branch) {
  p.validate();
  if (n < 2 || n > kDenseSiteCap)
    throw std::invalid_argument("limit state requires 2 <= N <= 12");
  switch (branch) {
    case LimitBranch::sigma_plus:
      if (p.sigma != +1)
        throw std::invalid_argument("branch requires sigma = +1");
      break;
    case LimitBranch::sigma_minus_even:
      if (p.sigma != -1 || n % 2 != 0)
        throw std::invalid_argument("branch requires sigma = -1 and even N");
      break;
    case LimitBranch::sigma_minus_odd:
      if (p.sigma != -1 || n % 2 == 0 || n < 3)
        throw std::invalid_argument("branch requires sigma = -1 and odd N >= 3");
      break;
  }

  DenseState state;
  state.amplitudes.assign(pow3(n), 0.0);
  state.n_sites = n;
  state.params = p;

  auto idx_all_zero = [n]() {
    long idx = 0;
    for (long s = 1; s <= n; ++s) idx += 1 * pow3(n - s);
    return idx;
  };
  // Configuration with +1 at `up`, -1 at `down`, 0 elsewhere.
  auto idx_pair = [n, &idx_all_zero](long up, long down) {
    long idx = idx_all_zero();
    idx -= pow3(n - up);   // digit 1 -> 0 at the +1 site
    idx += pow3(n - down); // digit 1 -> 2 at the -1 site
    return idx;
  };

  if (branch == LimitBranch::sigma_plus || branch == LimitBranch::sigma_minus_even) {
    state.amplitudes[idx_all_zero()] = 1.0;
    for (long k = 1; k <= n; ++k)
      for (long l = k + 1; l <= n; ++l) {
        double amp;
        if (branch == LimitBranch::sigma_plus) {
          amp = -p.g;
        } else {
          amp = p.g * (((l - k) % 2 == 0) ? 1.0 : -1.0);
        }
        state.amplitudes[idx_pair(k, l)] = amp;
        state.amplitudes[idx_pair(l, k)] = amp;
      }
  } else {
    for (long k = 1; k <= n; ++k)
      for (long l = k + 1; l <= n; ++l) {
        const double sign = ((l - k) % 2 == 0) ? 1.0 : -1.0;
        state.amplitudes[idx_pair(k, l)] = sign;
        state.amplitudes[idx_pair(l, k)] = -sign;
      }
  }

  double norm2 = 0.0;
  for (double a : state.amplitudes) norm2 += a * a;
  state.raw_norm = std::sqrt(norm2);
  for (double& a : state.amplitudes) a /= state.raw_norm;
  return state;
}

double critical_odd_negativity(long n, int r) {
  if (n % 2 == 0 || n < 3)
    throw std::invalid_argument("closed form requires odd N >= 3");
  if (r < 2 || r > n) throw std::invalid_argument("need 2 <= r <= N");
  const double nn = static_cast<double>(n);
  const double c2 = 1.0 / (nn * (nn - 1.0));
  const double q = (nn - 2.0) * (nn - 3.0);
  const double m = nn - 2.0 * r + 2.0;  // pair-coherence weight; n - 2 at r = 2
  const double lam_minus =
      0.5 * c2 * ((q - 1.0) - std::sqrt((q + 1.0) * (q + 1.0) + 8.0 * m * m));
  return -lam_minus;
}

}  // namespace mpchain
