#pragma once

// Normalization, correlators, and one-/two-site reduced density matrices,
// both at finite N and in the thermodynamic limit.

#include <optional>

#include "mpchain/transfer.hpp"
#include "mpchain/types.hpp"

namespace mpchain {

struct OneSiteRDM {
  Mat3 rho = Mat3::Zero();  // diag(a, 1 - 2a, a) in basis (+1, 0, -1)
  double a = 0.0;
  double b = 1.0;
  std::optional<long> n_sites;  // nullopt = thermodynamic limit
  ModelParams params;
};

// Thermodynamic element set of the two-site matrix, paper layout.
struct RdmElements {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  double nu = 0.0;
};

struct TwoSiteRDM {
  Mat9 rho = Mat9::Zero();  // basis |m1 m2>, row-major over (m1, m2)
  int r = 2;                // sites 1 and r
  std::optional<long> n_sites;  // nullopt = thermodynamic limit
  ModelParams params;
  std::optional<RdmElements> elements;  // set when built from closed forms
};

struct CorrelatorValue {
  enum class Kind { zz, transverse };
  double value = 0.0;
  Kind kind = Kind::zz;
  int r = 2;
  std::optional<long> n_sites;
};

// Z = (1+2|g|)^N + (1-2|g|)^N + 2 sigma^N, kept as mantissa * exp(log_scale)
// with log_scale = N ln(lambda1) so any N is representable.
ScaledScalar partition_function(const ModelParams& params, long n_sites);

// <O_k> = tr(E^{k-1} E_O E^{N-k}) / tr(E^N); independent of k on the ring.
double one_point(const ModelParams& params, long n_sites, const Mat3& op, long site);

// <S_z^1 S_z^r>. Thermodynamic mode uses the algebraically cancelled form
// -4 g^2 lambda2^{r-2} / lambda1^r (finite at |g| = 1/2); finite mode
// contracts transfer matrices.
CorrelatorValue two_point_zz(const ModelParams& params, int r,
                             std::optional<long> n_sites);

// <S_n^1 S_n^r> for any unit vector n in the xy plane (computed with S_x;
// the value is direction-independent). Identically 0 when sigma = Sign(g),
// and 0 at g = 0 where both factors vanish.
CorrelatorValue two_point_transverse(const ModelParams& params, int r,
                                     std::optional<long> n_sites);

OneSiteRDM one_site_rdm(const ModelParams& params, long n_sites);
OneSiteRDM one_site_rdm_thermo(const ModelParams& params);

// S = -2a log(a) - (1-2a) log(1-2a), 0 log 0 := 0. Base 2 by default.
double one_site_entropy(const ModelParams& params, long n_sites,
                        LogBase base = LogBase::two);
double one_site_entropy_thermo(const ModelParams& params,
                               LogBase base = LogBase::two);

// rho(1,r) at finite N via
//   rho[(i,k),(j,l)] = tr((A_i x A_j) E^{r-2} (A_k x A_l) E^{N-r}) / Z,
// row = 3i + k (site-1 index major). At the singular family point the
// analytic g -> 0 limit is returned instead.
TwoSiteRDM two_site_rdm(const ModelParams& params, int r, long n_sites);

// Same contraction anchored at sites (s1, s2); translation-invariance probe.
TwoSiteRDM two_site_rdm_sites(const ModelParams& params, int s1, int s2,
                              long n_sites);

// Closed-form thermodynamic rho(1,r).
TwoSiteRDM two_site_rdm_thermo(const ModelParams& params, int r);
RdmElements thermo_rdm_elements(const ModelParams& params, int r);

// -sum p log p over the eigenvalues of a density matrix. Throws if the trace
// deviates from 1 by more than 1e-8 or an eigenvalue is below -1e-9;
// eigenvalues in (-1e-9, 0) are clamped to 0.
double von_neumann_entropy(const Eigen::MatrixXd& rho,
                           LogBase base = LogBase::two);

}  // namespace mpchain
