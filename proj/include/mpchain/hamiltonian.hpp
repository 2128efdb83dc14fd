#pragma once

// Parent Hamiltonian of the family: null vectors of the adjacent two-site
// matrix, the local projector sum, its spin-operator coupling form, and the
// full ring operator at dense-state scale.

#include <array>
#include <span>
#include <vector>

#include "mpchain/types.hpp"

namespace mpchain {

struct HamiltonianWeights {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;

  void validate() const {
    if (a < 0.0 || b < 0.0 || c < 0.0)
      throw std::invalid_argument("projector weights must be nonnegative");
  }
};

struct CouplingConstants {
  double j1 = 0.0;  // S.S
  double j2 = 0.0;  // (S.S)^2
  double j3 = 0.0;  // Sz Sz
  double j4 = 0.0;  // (Sz Sz)^2
  double j5 = 0.0;  // Sz^2 (single site)
  double j6 = 0.0;  // {S.S, Sz Sz}
};

struct NullVectors {
  std::array<Vec9, 5> e;  // orthonormal; each satisfies sum c_kl A_k A_l = 0
};

NullVectors null_space_vectors(const ModelParams& params);

// h = a (P1 + P5) + b (P2 + P4) + c P3; positive semidefinite by construction.
Mat9 local_hamiltonian(const ModelParams& params, const HamiltonianWeights& w);

// Couplings of the rescaled spin form 2(1 + 2g^2) h + shift. At the fully
// rotation-symmetric point (g, sigma) = (1, -1) with unit weights they reduce
// to the bilinear-biquadratic values (3, 1, 0, 0, 0, 0).
CouplingConstants coupling_constants(const ModelParams& params,
                                     const HamiltonianWeights& w);

struct SpinFormResult {
  Mat9 matrix = Mat9::Zero();  // spin-operator form; equals 2(1+2g^2) h + shift I
  double shift = 0.0;          // solved additive constant
  double residual = 0.0;       // max-abs mismatch after the shift
};

// Assembles J1 S.S + J2 (S.S)^2 + J3 SzSz + J4 (SzSz)^2 + J5 (Sz^2 x I +
// I x Sz^2)/2 + J6 {S.S, SzSz} and verifies it equals 2(1+2g^2) h up to a
// solved constant. The single-site J5 term is symmetrized across the bond
// here; on the ring each site is covered twice, so the chain total matches
// the plain per-site convention. Throws if no shift closes the gap to 1e-10.
SpinFormResult spin_form_local(const ModelParams& params,
                               const HamiltonianWeights& w);

// H = sum_l h_{l,l+1} with site N+1 = 1, applied matrix-free on 3^N vectors.
// The N = 2 ring sums the single bond twice: H = h_12 + h_21 = 2h.
class ChainOperator {
 public:
  ChainOperator(Mat9 bond, long n_sites);

  long n_sites() const { return n_sites_; }
  long dimension() const { return dim_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  Mat9 bond_;
  long n_sites_;
  long dim_;
};

ChainOperator assemble_chain(const ModelParams& params,
                             const HamiltonianWeights& w, long n_sites);

}  // namespace mpchain
