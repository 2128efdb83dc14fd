#pragma once

// Partial transpose, negativity, the closed-form spectrum of the partially
// transposed thermodynamic two-site matrix, entanglement range / threshold
// finders, and the explicit near-critical limit states.

#include <array>
#include <optional>
#include <vector>

#include "mpchain/dense_state.hpp"
#include "mpchain/observables.hpp"
#include "mpchain/types.hpp"

namespace mpchain {

// Transposes the first subsystem: entry ((i,k),(j,l)) -> ((j,k),(i,l)).
// Negativity is convention-independent; both variants are provided and the
// spectra are asserted equal in tests.
Mat9 partial_transpose_first(const Mat9& rho);
Mat9 partial_transpose_second(const Mat9& rho);

struct NegativityResult {
  double value = 0.0;
  std::array<double, 9> pt_eigenvalues{};  // ascending
  std::vector<double> negative_set;        // eigenvalues below -1e-12
  int r = 2;
  std::optional<long> n_sites;
  ModelParams params;
};

inline constexpr double kNegativityTol = 1e-12;

// Diagonalizes the partial transpose; value = sum |negative eigenvalues|.
// The trace-norm form (||rho^T_A||_1 - 1)/2 is computed as well and the two
// are required to agree to 1e-12.
NegativityResult negativity(const TwoSiteRDM& rdm);

// Closed-form eigenvalues of the partially transposed thermodynamic matrix,
// in the fixed order (alpha, beta, beta, |g|c+d, |g|c+d, |g|c-d, |g|c-d,
// plus/minus branch pair). omega9 (the minus branch) is the only one that
// can go negative. Asserts multiset equality with a dense diagonalization.
struct PtSpectrum {
  std::array<double, 9> omega{};
  double omega9() const { return omega[8]; }
};

PtSpectrum pt_spectrum_thermo(const ModelParams& params, int r);

// Largest separation r with a negative partial-transpose eigenvalue, plus
// the small-g estimate ln(3)/(4|g|) + 2. Throws at g = 0 (infinite range).
struct EntanglementRange {
  long exact = 0;
  double approx = 0.0;
};

EntanglementRange entanglement_range(const ModelParams& params);

struct ScanCapReached : std::runtime_error {
  long cap;
  explicit ScanCapReached(long cap_)
      : std::runtime_error("still entangled at the scan cap: N_max >= " +
                           std::to_string(cap_)),
        cap(cap_) {}
};

// Largest N <= cap with finite-N negativity above 1e-12 at separation r,
// nullopt if never positive. Throws ScanCapReached when the cap itself is
// still entangled (the threshold, if any, lies beyond the scan).
std::optional<long> max_entangled_system_size(const ModelParams& params, int r,
                                              long cap = 500);

// Explicit form of the state near g = 0. The three branches are the sigma
// = +1 family, the sigma = -1 even ring, and the sigma = -1 odd ring (where
// the uniform amplitude vanishes and only the two-excitation part survives).
enum class LimitBranch { sigma_plus, sigma_minus_even, sigma_minus_odd };

DenseState limiting_state(const ModelParams& params, long n_sites,
                          LimitBranch branch);

// Closed-form negativity of the sigma = -1 odd-ring limit state at sites
// (1, r). Reduces to the adjacent-site expression at r = 2 and r = N; the
// general-r value carries the pair-coherence weight N - 2r + 2.
double critical_odd_negativity(long n_sites, int r);

}  // namespace mpchain
