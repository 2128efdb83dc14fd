#include "mpchain/hamiltonian.hpp"

#include <cmath>

#include "mpchain/dense_state.hpp"
#include "mpchain/site_matrices.hpp"

namespace mpchain {

namespace {

// |m1 m2> index with the fixed basis order (+1, 0, -1) -> (0, 1, 2).
int pair_index(int i, int j) { return 3 * i + j; }

Mat9 kron3(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

}  // namespace

NullVectors null_space_vectors(const ModelParams& p) {
  p.validate();
  NullVectors nv;
  for (Vec9& v : nv.e) v = Vec9::Zero();
  const double s = static_cast<double>(p.sigma);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  nv.e[0](pair_index(0, 0)) = 1.0;  // |1,1>

  nv.e[1](pair_index(0, 1)) = inv_sqrt2;  // (|1,0> - sigma |0,1>)/sqrt(2)
  nv.e[1](pair_index(1, 0)) = -s * inv_sqrt2;

  const double n3 = 1.0 / std::sqrt(2.0 + 4.0 * p.g * p.g);
  nv.e[2](pair_index(0, 2)) = n3;  // (|1,-1> + 2g |0,0> + |-1,1>)/sqrt(2+4g^2)
  nv.e[2](pair_index(1, 1)) = 2.0 * p.g * n3;
  nv.e[2](pair_index(2, 0)) = n3;

  nv.e[3](pair_index(1, 2)) = inv_sqrt2;  // (|0,-1> - sigma |-1,0>)/sqrt(2)
  nv.e[3](pair_index(2, 1)) = -s * inv_sqrt2;

  nv.e[4](pair_index(2, 2)) = 1.0;  // |-1,-1>
  return nv;
}

Mat9 local_hamiltonian(const ModelParams& p, const HamiltonianWeights& w) {
  w.validate();
  const NullVectors nv = null_space_vectors(p);
  const double weights[5] = {w.a, w.b, w.c, w.b, w.a};
  Mat9 h = Mat9::Zero();
  for (int k = 0; k < 5; ++k) h += weights[k] * nv.e[k] * nv.e[k].transpose();
  return h;
}

CouplingConstants coupling_constants(const ModelParams& p,
                                     const HamiltonianWeights& w) {
  p.validate();
  w.validate();
  const double g = p.g;
  const double s = static_cast<double>(p.sigma);
  const double u = 1.0 + 2.0 * g * g;
  CouplingConstants j;
  j.j1 = -w.b * s * u;
  j.j2 = w.c;
  j.j3 = (w.a + w.b * s) * u;
  j.j4 = (w.a + 2.0 * w.b * (s - 1.0)) * u + (1.0 + 2.0 * g) * (1.0 + 2.0 * g) * w.c;
  j.j5 = 2.0 * w.b * u + 2.0 * w.c * (1.0 - 4.0 * g * g);
  j.j6 = -w.b * s * u - w.c * (1.0 + 2.0 * g);
  return j;
}

SpinFormResult spin_form_local(const ModelParams& p, const HamiltonianWeights& w) {
  const CouplingConstants j = coupling_constants(p, w);

  // S_x x S_x + S_y x S_y stays real as (S_+ x S_- + S_- x S_+)/2.
  Mat3 splus = Mat3::Zero();
  splus(0, 1) = std::sqrt(2.0);
  splus(1, 2) = std::sqrt(2.0);
  const Mat3 sminus = splus.transpose();
  const Mat3 sz = spin::sz();
  const Mat3 sz2 = spin::sz2();
  const Mat3 id = spin::identity();

  const Mat9 heis = 0.5 * (kron3(splus, sminus) + kron3(sminus, splus)) +
                    kron3(sz, sz);
  const Mat9 kz = kron3(sz, sz);
  const Mat9 single = 0.5 * (kron3(sz2, id) + kron3(id, sz2));

  SpinFormResult out;
  out.matrix = j.j1 * heis + j.j2 * heis * heis + j.j3 * kz +
               j.j4 * kz * kz + j.j5 * single +
               j.j6 * (heis * kz + kz * heis);

  const Mat9 h = local_hamiltonian(p, w);
  const double scale = 2.0 * (1.0 + 2.0 * p.g * p.g);
  out.shift = (out.matrix.trace() - scale * h.trace()) / 9.0;
  Mat9 diff = out.matrix - scale * h - out.shift * Mat9::Identity();
  out.residual = diff.cwiseAbs().maxCoeff();
  if (out.residual > 1e-10)
    throw std::runtime_error(
        "spin-operator form does not match the projector sum up to a constant");
  return out;
}

ChainOperator::ChainOperator(Mat9 bond, long n_sites)
    : bond_(std::move(bond)), n_sites_(n_sites), dim_(pow3(n_sites)) {
  if (n_sites < 2 || n_sites > kDenseSiteCap)
    throw std::invalid_argument("chain operator requires 2 <= N <= 12");
}

void ChainOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<long>(x.size()) != dim_ || static_cast<long>(y.size()) != dim_)
    throw std::invalid_argument("vector size must be 3^N");
  std::fill(y.begin(), y.end(), 0.0);

  for (long bond_site = 1; bond_site <= n_sites_; ++bond_site) {
    const long s = bond_site;
    const long t = (bond_site % n_sites_) + 1;  // site N+1 = 1
    const long stride_s = pow3(n_sites_ - s);
    const long stride_t = pow3(n_sites_ - t);
    for (long idx = 0; idx < dim_; ++idx) {
      const int ds = static_cast<int>(idx / stride_s) % 3;
      const int dt = static_cast<int>(idx / stride_t) % 3;
      const long base = idx - ds * stride_s - dt * stride_t;
      const int row = 3 * ds + dt;
      double acc = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double hij = bond_(row, 3 * a + b);
          if (hij != 0.0) acc += hij * x[base + a * stride_s + b * stride_t];
        }
      y[idx] += acc;
    }
  }
}

std::vector<double> ChainOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  apply(std::span<const double>(x), std::span<double>(y));
  return y;
}

ChainOperator assemble_chain(const ModelParams& p, const HamiltonianWeights& w,
                             long n_sites) {
  return ChainOperator(local_hamiltonian(p, w), n_sites);
}

}  // namespace mpchain
