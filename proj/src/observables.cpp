#include "mpchain/observables.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mpchain {

namespace {

// Z / lambda1^N; vanishes exactly at the singular family point.
double partition_hat(const ModelParams& p, long n) {
  const double q = p.lambda2() / p.lambda1();
  const double s = static_cast<double>(p.sigma) / p.lambda1();
  const double nn = static_cast<double>(n);
  return 1.0 + std::pow(q, nn) + 2.0 * std::pow(s, nn);
}

double xlogx(double x, LogBase base) {
  if (x <= 0.0) return 0.0;
  return x * log_in_base(x, base);
}

double entropy_from_population(double a, LogBase base) {
  return -2.0 * xlogx(a, base) - xlogx(1.0 - 2.0 * a, base);
}

// Shared 9x9 layout: diagonal (alpha, w, beta, w, gamma, w, beta, w, alpha)
// plus the symmetry-allowed coherences. w is |g| gamma in the thermodynamic
// form; the g -> 0 odd-ring limit fills the same slots with its own values.
Mat9 assemble_pattern(double alpha, double beta, double gamma, double w,
                      double delta, double mu, double nu) {
  Mat9 rho = Mat9::Zero();
  rho(0, 0) = alpha;
  rho(8, 8) = alpha;
  rho(2, 2) = beta;
  rho(6, 6) = beta;
  rho(4, 4) = gamma;
  for (int i : {1, 3, 5, 7}) rho(i, i) = w;
  rho(1, 3) = rho(3, 1) = mu;
  rho(5, 7) = rho(7, 5) = mu;
  rho(2, 4) = rho(4, 2) = delta;
  rho(4, 6) = rho(6, 4) = delta;
  rho(2, 6) = rho(6, 2) = nu;
  return rho;
}

// g -> 0 limit of rho(1,r) for sigma = -1 on an odd ring. Derived from the
// alternating two-excitation state; the element set below reproduces the
// dense partial trace exactly (cross-checked by the oracle suite).
TwoSiteRDM critical_odd_rdm(const ModelParams& p, int r, long n) {
  const double c2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
  const double nn = static_cast<double>(n);
  const double beta = c2;
  const double gamma = (nn - 2.0) * (nn - 3.0) * c2;
  const double w = (nn - 2.0) * c2;
  const double mu = ((r % 2 == 0) ? -1.0 : 1.0) * (nn - 2.0 * r + 2.0) * c2;
  const double nu = -c2;

  TwoSiteRDM rdm;
  rdm.rho = assemble_pattern(0.0, beta, gamma, w, 0.0, mu, nu);
  rdm.r = r;
  rdm.n_sites = n;
  rdm.params = p;
  return rdm;
}

}  // namespace

ScaledScalar partition_function(const ModelParams& p, long n) {
  p.validate();
  if (n < 1) throw std::invalid_argument("partition function requires N >= 1");
  return ScaledScalar{partition_hat(p, n),
                      static_cast<double>(n) * std::log(p.lambda1())};
}

double one_point(const ModelParams& p, long n, const Mat3& op, long site) {
  p.validate();
  if (site < 1 || site > n) throw std::invalid_argument("site must be in 1..N");
  if (p.singular_at(n)) {
    // Limit state has populations (1/N, 1 - 2/N, 1/N).
    const double a = 1.0 / static_cast<double>(n);
    Mat3 rho = Mat3::Zero();
    rho(0, 0) = a;
    rho(1, 1) = 1.0 - 2.0 * a;
    rho(2, 2) = a;
    return (rho * op).trace();
  }
  const SiteMatrices mats = build_site_matrices(p);
  const TransferMatrix e = transfer_matrix(mats);
  const TransferMatrix eo = operator_transfer_matrix(mats, op);
  const Mat4 left = normalized_transfer_power(e, site - 1);
  const Mat4 right = normalized_transfer_power(e, n - site);
  const double num = (left * eo.m * right).trace();
  return num / (p.lambda1() * partition_hat(p, n));
}

CorrelatorValue two_point_zz(const ModelParams& p, int r, std::optional<long> n) {
  p.validate();
  if (r < 2) throw std::invalid_argument("two-point functions require r >= 2");
  CorrelatorValue out;
  out.kind = CorrelatorValue::Kind::zz;
  out.r = r;
  out.n_sites = n;
  if (!n) {
    const double q = p.lambda2() / p.lambda1();
    out.value = -4.0 * p.g * p.g * std::pow(q, static_cast<double>(r - 2)) /
                (p.lambda1() * p.lambda1());
    return out;
  }
  if (r > *n) throw std::invalid_argument("r must not exceed N");
  if (p.singular_at(*n)) {
    const TwoSiteRDM rdm = two_site_rdm(p, r, *n);
    const Mat3 sz = spin::sz();
    Mat9 szsz = Mat9::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) szsz(3 * i + j, 3 * i + j) = sz(i, i) * sz(j, j);
    out.value = (rdm.rho * szsz).trace();
    return out;
  }
  const SiteMatrices mats = build_site_matrices(p);
  const TransferMatrix e = transfer_matrix(mats);
  const TransferMatrix ez = operator_transfer_matrix(mats, spin::sz());
  const Mat4 mid = normalized_transfer_power(e, r - 2);
  const Mat4 outer = normalized_transfer_power(e, *n - r);
  const double num = (ez.m * mid * ez.m * outer).trace();
  out.value = num / (p.lambda1() * p.lambda1() * partition_hat(p, *n));
  return out;
}

CorrelatorValue two_point_transverse(const ModelParams& p, int r,
                                     std::optional<long> n) {
  p.validate();
  if (r < 2) throw std::invalid_argument("two-point functions require r >= 2");
  CorrelatorValue out;
  out.kind = CorrelatorValue::Kind::transverse;
  out.r = r;
  out.n_sites = n;
  if (!n) {
    if (p.g == 0.0) {
      out.value = 0.0;  // Sign(0) convention: both factors vanish
      return out;
    }
    const double s = static_cast<double>(p.sigma) / p.lambda1();
    out.value = -2.0 * p.abs_g() * (p.sigma - p.sign_g()) *
                std::pow(s, static_cast<double>(r));
    return out;
  }
  if (r > *n) throw std::invalid_argument("r must not exceed N");
  if (p.singular_at(*n)) {
    const TwoSiteRDM rdm = two_site_rdm(p, r, *n);
    const Mat3 sx = spin::sx();
    Mat9 sxsx = Mat9::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            sxsx(3 * i + j, 3 * k + l) = sx(i, k) * sx(j, l);
    out.value = (rdm.rho * sxsx).trace();
    return out;
  }
  const SiteMatrices mats = build_site_matrices(p);
  const TransferMatrix e = transfer_matrix(mats);
  const TransferMatrix ex = operator_transfer_matrix(mats, spin::sx());
  const Mat4 mid = normalized_transfer_power(e, r - 2);
  const Mat4 outer = normalized_transfer_power(e, *n - r);
  const double num = (ex.m * mid * ex.m * outer).trace();
  out.value = num / (p.lambda1() * p.lambda1() * partition_hat(p, *n));
  return out;
}

OneSiteRDM one_site_rdm(const ModelParams& p, long n) {
  p.validate();
  if (n < 2) throw std::invalid_argument("one-site matrix requires N >= 2");
  OneSiteRDM out;
  out.n_sites = n;
  out.params = p;
  if (p.singular_at(n)) {
    out.a = 1.0 / static_cast<double>(n);
  } else {
    const double q = p.lambda2() / p.lambda1();
    const double zhat = partition_hat(p, n);
    out.a = (p.abs_g() / p.lambda1()) *
            (1.0 - std::pow(q, static_cast<double>(n - 1))) / zhat;
  }
  out.b = 1.0 - 2.0 * out.a;
  out.rho = Mat3::Zero();
  out.rho(0, 0) = out.a;
  out.rho(1, 1) = out.b;
  out.rho(2, 2) = out.a;
  return out;
}

OneSiteRDM one_site_rdm_thermo(const ModelParams& p) {
  p.validate();
  OneSiteRDM out;
  out.params = p;
  out.a = p.abs_g() / p.lambda1();
  out.b = 1.0 - 2.0 * out.a;
  out.rho = Mat3::Zero();
  out.rho(0, 0) = out.a;
  out.rho(1, 1) = out.b;
  out.rho(2, 2) = out.a;
  return out;
}

double one_site_entropy(const ModelParams& p, long n, LogBase base) {
  return entropy_from_population(one_site_rdm(p, n).a, base);
}

double one_site_entropy_thermo(const ModelParams& p, LogBase base) {
  return entropy_from_population(one_site_rdm_thermo(p).a, base);
}

TwoSiteRDM two_site_rdm_sites(const ModelParams& p, int s1, int s2, long n) {
  p.validate();
  if (n < 2) throw std::invalid_argument("two-site matrix requires N >= 2");
  if (s1 < 1 || s2 <= s1 || s2 > n)
    throw std::invalid_argument("need 1 <= s1 < s2 <= N");
  const int r = s2 - s1 + 1;
  if (p.singular_at(n)) return critical_odd_rdm(p, r, n);

  const SiteMatrices mats = build_site_matrices(p);
  const TransferMatrix e = transfer_matrix(mats);
  const Mat4 before = normalized_transfer_power(e, s1 - 1);
  const Mat4 mid = normalized_transfer_power(e, s2 - s1 - 1);
  const Mat4 after = normalized_transfer_power(e, n - s2);
  const double lam1 = p.lambda1();
  const double denom = lam1 * lam1 * partition_hat(p, n);

  Mat4 pair[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) pair[a][b] = kron2(mats.by_index(a), mats.by_index(b));

  TwoSiteRDM rdm;
  rdm.r = r;
  rdm.n_sites = n;
  rdm.params = p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Mat4 head = before * pair[i][j] * mid;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          rdm.rho(3 * i + k, 3 * j + l) = (head * pair[k][l] * after).trace() / denom;
    }
  return rdm;
}

TwoSiteRDM two_site_rdm(const ModelParams& p, int r, long n) {
  if (r < 2) throw std::invalid_argument("two-site matrix requires r >= 2");
  if (r > n) throw std::invalid_argument("r must not exceed N");
  return two_site_rdm_sites(p, 1, r, n);
}

RdmElements thermo_rdm_elements(const ModelParams& p, int r) {
  p.validate();
  if (r < 2) throw std::invalid_argument("two-site matrix requires r >= 2");
  const double lam1 = p.lambda1();
  const double q = p.lambda2() / lam1;
  const double qr = std::pow(q, static_cast<double>(r - 2));
  const double s_pow = std::pow(static_cast<double>(p.sigma) / lam1,
                                static_cast<double>(r));
  RdmElements el;
  el.alpha = p.g * p.g * (1.0 - qr) / (lam1 * lam1);
  el.beta = p.g * p.g * (1.0 + qr) / (lam1 * lam1);
  el.gamma = 1.0 / (lam1 * lam1);
  el.delta = -p.g * s_pow;
  el.mu = p.sigma * p.abs_g() * s_pow;
  el.nu = 0.0;
  return el;
}

TwoSiteRDM two_site_rdm_thermo(const ModelParams& p, int r) {
  const RdmElements el = thermo_rdm_elements(p, r);
  TwoSiteRDM rdm;
  rdm.rho = assemble_pattern(el.alpha, el.beta, el.gamma,
                             p.abs_g() * el.gamma, el.delta, el.mu, el.nu);
  rdm.r = r;
  rdm.params = p;
  rdm.elements = el;
  return rdm;
}

double von_neumann_entropy(const Eigen::MatrixXd& rho, LogBase base) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix must be square");
  if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("density matrix must be symmetric");
  if (std::abs(rho.trace() - 1.0) > 1e-8)
    throw std::invalid_argument("density matrix trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev < -1e-9)
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    s -= xlogx(std::max(ev, 0.0), base);
  }
  return s;
}

}  // namespace mpchain
