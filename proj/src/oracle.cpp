#include "mpchain/oracle.hpp"

#include <cmath>

namespace mpchain {

NegativityResult dense_negativity(const DenseState& state, int site1, int site2) {
  if (site1 >= site2)
    throw std::invalid_argument("need site1 < site2");
  TwoSiteRDM rdm;
  rdm.rho = dense_rdm(state, {site1, site2});
  rdm.r = site2 - site1 + 1;  // matches the rho(1, r) labeling
  rdm.n_sites = state.n_sites;
  rdm.params = state.params;
  return negativity(rdm);
}

double dense_energy(const DenseState& state, const HamiltonianWeights& w) {
  const ChainOperator h = assemble_chain(state.params, w, state.n_sites);
  const std::vector<double> hx = h.apply(state.amplitudes);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < hx.size(); ++i) {
    num += hx[i] * hx[i];
    den += state.amplitudes[i] * state.amplitudes[i];
  }
  return std::sqrt(num / den);
}

double dense_energy(const ModelParams& params, const HamiltonianWeights& w,
                    long n_sites) {
  return dense_energy(dense_state(params, n_sites), w);
}

}  // namespace mpchain
