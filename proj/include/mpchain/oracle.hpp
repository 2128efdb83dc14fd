#pragma once

// Dense-state reference routines: negativity by explicit partial trace and
// eigensolve, and the zero-energy check of the parent Hamiltonian. Ground
// truth for every finite-N claim of the transfer-matrix machinery.

#include "mpchain/dense_state.hpp"
#include "mpchain/entanglement.hpp"
#include "mpchain/hamiltonian.hpp"

namespace mpchain {

// Partial trace onto (site1, site2), partial transpose, dense eigensolve.
NegativityResult dense_negativity(const DenseState& state, int site1, int site2);

// ||H psi|| / ||psi|| for the given (already normalized) state.
double dense_energy(const DenseState& state, const HamiltonianWeights& w);

// Convenience: builds the exact state first.
double dense_energy(const ModelParams& params, const HamiltonianWeights& w,
                    long n_sites);

}  // namespace mpchain
