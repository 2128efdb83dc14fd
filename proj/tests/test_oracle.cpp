#include <doctest.h>

#include <cmath>
#include <random>

#include "mpchain/oracle.hpp"
#include "test_helpers.hpp"

using namespace mpchain;

namespace {

long cyclic_shift(long idx, long n) {
  // Move the last digit to the front (site-major base-3 encoding).
  const long last = idx % 3;
  return idx / 3 + last * pow3(n - 1);
}

}  // namespace

TEST_CASE("dense state construction") {
  SUBCASE("g = 0, sigma = +1 is the pure |0...0> state") {
    const DenseState st = dense_state({0.0, +1}, 5);
    long zero_idx = 0;
    for (int s = 0; s < 5; ++s) zero_idx = 3 * zero_idx + 1;
    for (long i = 0; i < pow3(5); ++i)
      CHECK(st.amplitudes[i] == (i == zero_idx ? 1.0 : 0.0));
  }
  SUBCASE("raw norm squared equals the normalization constant") {
    const DenseState st = dense_state({1.0, -1}, 3);
    CHECK(st.raw_norm * st.raw_norm == doctest::Approx(24.0).epsilon(1e-13));
    double norm2 = 0.0;
    for (double a : st.amplitudes) norm2 += a * a;
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("amplitudes are invariant under cyclic shifts") {
    const DenseState st = dense_state({0.3, -1}, 5);
    for (long i = 0; i < pow3(5); ++i)
      CHECK(st.amplitudes[i] ==
            doctest::Approx(st.amplitudes[cyclic_shift(i, 5)]).epsilon(1e-13));
  }
  SUBCASE("the vanishing family point is rejected") {
    CHECK_THROWS_AS(dense_state({0.0, -1}, 5), std::domain_error);
  }
  SUBCASE("size caps") {
    CHECK_THROWS_AS(dense_state({0.1, +1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(dense_state({0.1, +1}, 13), std::invalid_argument);
  }
}

TEST_CASE("dense partial trace") {
  const DenseState st = dense_state({0.4, +1}, 3);
  SUBCASE("full-system trace is the projector onto the state") {
    const Eigen::MatrixXd rho = dense_rdm(st, {1, 2, 3});
    for (long i = 0; i < 27; ++i)
      for (long j = 0; j < 27; ++j)
        CHECK(rho(i, j) ==
              doctest::Approx(st.amplitudes[i] * st.amplitudes[j]).epsilon(1e-14));
  }
  SUBCASE("site validation") {
    CHECK_THROWS_AS(dense_rdm(st, {0, 1}), std::out_of_range);
    CHECK_THROWS_AS(dense_rdm(st, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(dense_rdm(st, {}), std::invalid_argument);
  }
}

TEST_CASE("dense negativity agrees with the transfer route") {
  for (double g : {0.25, -0.5})
    for (int sigma : {+1, -1}) {
      const ModelParams p{g, sigma};
      const DenseState st = dense_state(p, 6);
      for (int r = 2; r <= 6; ++r) {
        const double dense = dense_negativity(st, 1, r).value;
        const double transfer = negativity(two_site_rdm(p, r, 6)).value;
        CHECK(std::abs(dense - transfer) <= 1e-12);
      }
    }
}

TEST_CASE("dense negativity of the odd limit state at N = 3 is 1/3") {
  const DenseState st = limiting_state({0.0, -1}, 3, LimitBranch::sigma_minus_odd);
  CHECK(dense_negativity(st, 1, 2).value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("ground-state residual") {
  SUBCASE("rotation-symmetric point at N = 6") {
    CHECK(dense_energy({1.0, -1}, {1, 1, 1}, 6) <= 1e-10);
  }
  SUBCASE("perturbations grow the residual linearly") {
    const ModelParams p{0.3, +1};
    const HamiltonianWeights w{1.0, 1.0, 1.0};
    const DenseState st = dense_state(p, 5);
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(st.amplitudes.size());
    double norm2 = 0.0;
    for (double& x : noise) {
      x = gauss(rng);
      norm2 += x * x;
    }
    for (double& x : noise) x /= std::sqrt(norm2);

    auto residual_at = [&](double eps) {
      DenseState perturbed = st;
      for (size_t i = 0; i < noise.size(); ++i)
        perturbed.amplitudes[i] += eps * noise[i];
      return dense_energy(perturbed, w);
    };
    const double r4 = residual_at(1e-4);
    const double r6 = residual_at(1e-6);
    CHECK(r4 / r6 == doctest::Approx(100.0).epsilon(0.05));
    CHECK(r6 > 1e-8);  // sensitivity sanity: well above the exact-state floor
  }
}
