#include "oracle_values.hpp"
#include "tancascade/transversal.hpp"

#include <doctest.h>

#include <cmath>

using namespace tancascade;

TEST_CASE("orbit set P at beta_1") {
  auto P = build_orbit_P(static_cast<double>(oracle::beta[0]), 1);
  REQUIRE(P.m == 2);
  REQUIRE(P.points.size() == 2);
  CHECK(P.points[0] == doctest::Approx(half_pi_v<double>()));
  CHECK(P.closure_residual < 1e-10);
  CHECK_THROWS_AS(build_orbit_P(2.9, 1), Error);
}

TEST_CASE("1x1 transfer matrix and P at beta_1") {
  auto P = build_orbit_P(oracle::beta[0], 1);
  auto A = transfer_matrix(P);
  REQUIRE(A.dim == 1);
  CHECK(std::fabs(A(0, 0) - oracle::A_beta1) < 1e-15L);
  CHECK(std::fabs(poly_P(P, 1.0L) - oracle::P1_beta1) < 1e-15L);
  CHECK(poly_P(P, 0.0L) == 1.0L);
  CHECK(spectral_radius(A) <= 1 + 1e-9L);
}

TEST_CASE("sparsity pattern of the transfer matrix") {
  for (int n = 2; n <= 4; ++n) {
    auto P = build_orbit_P(static_cast<double>(oracle::beta[n - 1]), n);
    auto A = transfer_matrix(P);
    REQUIRE(A.dim == P.m - 1);
    for (int i = 0; i < A.dim; ++i)
      for (int j = 1; j < A.dim; ++j) {
        // only the first column and the superdiagonal are populated
        if (j == i + 1)
          CHECK(A(i, j) != 0.0);
        else
          CHECK(A(i, j) == 0.0);
      }
  }
}

TEST_CASE("zero matrix has spectral radius 0") {
  TransferMatrix<double> Z;
  Z.dim = 3;
  Z.entries.assign(9, 0.0);
  CHECK(spectral_radius(Z) == 0.0L);
}

TEST_CASE("polynomial roots") {
  // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
  auto r = polynomial_roots({6.0L, -7.0L, 0.0L, 1.0L});
  std::vector<cplx> want{{1, 0}, {2, 0}, {-3, 0}};
  CHECK(multiset_distance(r, want) < 1e-15L);
  // x^2 + 1
  auto c = polynomial_roots({1.0L, 0.0L, 1.0L});
  CHECK(multiset_distance(c, {{0, 1}, {0, -1}}) < 1e-15L);
}

TEST_CASE("Phi' at beta_1 by the chain rule and by the identity") {
  auto P = build_orbit_P(oracle::beta[0], 1);
  auto d = eval_F_partials(P.points[1], P.points[1]);
  long double chain = d.dF_dw + d.dF_dz;
  long double identity = orbit_derivative(P) * poly_P(P, 1.0L);
  CHECK(std::fabs(chain - oracle::phi_prime_beta1) < 1e-15L);
  CHECK(std::fabs(identity - chain) <= 1e-10L * std::fabs(chain));
  auto pp = phi_prime(P);
  CHECK(std::fabs(pp.numeric - identity) <= 1e-10L * std::fabs(identity));
  CHECK(pp.positivity);
}

TEST_CASE("certificates at beta_1 .. beta_4") {
  for (int n = 1; n <= 4; ++n) {
    auto c = certify(static_cast<double>(oracle::beta[n - 1]), n);
    CHECK(c.spectral_radius <= 1 + 1e-9L);
    CHECK(c.min_distance_to_one > 1e-6L);
    CHECK(c.eigen_root_mismatch < 1e-8L);
    CHECK(c.conjugation_defect < 1e-10L);
    CHECK(std::fabs(c.phi.numeric - c.phi.via_identity) <= 1e-5 * std::fabs(c.phi.numeric));
    CHECK(c.phi.positivity);
    CHECK(c.P1 > 0);
  }
}
