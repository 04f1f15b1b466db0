#include "oracle_values.hpp"
#include "tancascade/tanmap.hpp"

#include <doctest.h>

#include <random>

using namespace tancascade;

namespace {
const double kPi = pi_v<double>();
const double kHalfPi = half_pi_v<double>();
}  // namespace

TEST_CASE("T_t on the axes") {
  MapParams<double> p1(1.0), p2(2.0);
  auto z0 = eval_T(p1, ComplexVal<double>{0, 0});
  CHECK(z0.re == 0.0);
  CHECK(z0.im == 0.0);

  auto far = eval_T(p2, ComplexVal<double>{0, 50});
  CHECK(far.re == -2.0);
  CHECK(far.im == 0.0);

  auto q = eval_T(p2, ComplexVal<double>{kPi / 4, 0});
  CHECK(q.re == doctest::Approx(0.0));
  CHECK(q.im == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(eval_T(p2, ComplexVal<double>{kHalfPi, 0}), Error);
}

TEST_CASE("f_t at poles uses one-sided limits and flips the side") {
  MapParams<double> p(2.0);
  auto left = eval_f(p, Sided<double>{kHalfPi, Side::from_left});
  CHECK(left.value == -2.0);
  CHECK(left.side == Side::from_right);
  auto right = eval_f(p, Sided<double>{kHalfPi, Side::from_right});
  CHECK(right.value == 2.0);
  CHECK(right.side == Side::from_left);
  auto minus_pole = eval_f(p, Sided<double>{-kHalfPi, Side::from_right});
  CHECK(minus_pole.value == 2.0);

  try {
    eval_f(p, Sided<double>{kHalfPi, Side::none});
    FAIL("expected UnsidedPole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsidedPole);
  }
}

TEST_CASE("f_t values") {
  for (double t : {0.3, 1.0, 2.5, kPi}) CHECK(eval_f(MapParams<double>(t), 0.0) == 0.0);
  CHECK(eval_f(MapParams<double>(2.0), kPi / 4) ==
        doctest::Approx(static_cast<double>(oracle::f_2_quarter_pi)).epsilon(1e-15));
  MapParams<long double> pl(2.0L);
  CHECK(std::fabs(eval_f(pl, pi_v<long double>() / 4) - oracle::f_2_quarter_pi) < 1e-18L);
}

TEST_CASE("f_t' values") {
  CHECK(eval_f_prime(MapParams<double>(2.0), 0.0) == -4.0);
  CHECK(eval_f_prime(MapParams<double>(3.0), kPi / 4) ==
        doctest::Approx(static_cast<double>(oracle::fprime_3_quarter_pi)).epsilon(1e-14));
  // flat critical behavior next to the pole
  CHECK(eval_f_prime(MapParams<double>(2.0), kHalfPi - 1e-3) == 0.0);
  CHECK_THROWS_AS(eval_f_prime(MapParams<double>(2.0), kHalfPi), Error);
}

TEST_CASE("partials of F(w, z)") {
  auto d0 = eval_F_partials(2.0, 0.0);
  CHECK(d0.dF_dw == 0.0);
  CHECK(d0.dF_dz == -4.0);
  auto d = eval_F_partials(1.0, kPi / 4);
  CHECK(d.dF_dw == doctest::Approx(static_cast<double>(oracle::dFdw_1_quarter_pi)).epsilon(1e-14));
  CHECK(d.dF_dz == doctest::Approx(static_cast<double>(oracle::dFdz_1_quarter_pi)).epsilon(1e-14));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> W(0.2, 3.1), Z(-1.4, 1.4);
  for (int i = 0; i < 500; ++i) CHECK(partials_self_test(W(rng), Z(rng), 1e-6) < 1e-6);
}

TEST_CASE("Schwarzian") {
  CHECK(schwarzian(MapParams<double>(2.0), 0.0) == doctest::Approx(-6.0).epsilon(1e-6));
  CHECK(schwarzian(MapParams<double>(0.5), 0.0) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(schwarzian(MapParams<double>(2.0), 0.3) ==
        doctest::Approx(static_cast<double>(oracle::schwarzian_2_at_0_3)).epsilon(1e-6));
  try {
    schwarzian(MapParams<double>(2.0), kHalfPi - 1e-2);
    FAIL("expected DegenerateDerivative");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateDerivative);
  }
}

TEST_CASE("orbit bookkeeping") {
  MapParams<double> p(2.0);
  auto o = orbit(p, Sided<double>{kHalfPi, Side::from_right}, 1);
  REQUIRE(o.points.size() == 1);
  CHECK(o.points[0].value == 2.0);
  CHECK(o.points[0].side == Side::from_left);
  CHECK(o.pole_hits == 1);

  auto z = orbit(MapParams<double>(1.7), Sided<double>{0.0, Side::none}, 5);
  REQUIRE(z.points.size() == 5);
  for (const auto& s : z.points) CHECK(s.value == 0.0);

  // (alpha_1, beta_1): the tail settles on a 2-cycle of f, i.e. period 4 under T
  auto tail = orbit(MapParams<double>(2.9), Sided<double>{2.9, Side::none}, 4000);
  REQUIRE(tail.points.size() == 4000);
  double x0 = tail.points[3996].value;
  CHECK(std::fabs(tail.points[3998].value - x0) < 1e-9);
  CHECK(std::fabs(tail.points[3997].value - x0) > 1e-3);
}

TEST_CASE("map kernel properties on random samples") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> T(0.05, kPi), X(-6.0, 6.0), T1(1.0001, kPi);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    double t = T(rng), x = X(rng);
    if (pole_distance(x) < 1e-6) continue;
    MapParams<double> p(t);
    double fx = eval_f(p, x);
    // odd, pi-periodic, bounded by t
    CHECK(std::fabs(fx + eval_f(p, -x)) <= 1e-12 * (1 + std::fabs(fx)));
    CHECK(std::fabs(eval_f(p, x + kPi) - fx) <= 1e-12 * (1 + std::fabs(fx)) + 1e-12 * std::fabs(eval_f_prime(p, x)) * 8);
    CHECK(std::fabs(fx) <= t);
    // derivative against centered differences away from saturation
    if (std::fabs(t * tan_reduced(x)) < 15 && pole_distance(x) > 1e-2) {
      double h = 1e-6 * std::min(1.0, pole_distance(x));
      double fd = (eval_f(p, x + h) - eval_f(p, x - h)) / (2 * h);
      double an = eval_f_prime(p, x);
      CHECK(std::fabs(fd - an) <= 1e-6 * (1 + std::fabs(an)));
      ++checked;
    }
  }
  CHECK(checked > 500);

  // strictly decreasing on each fundamental interval
  for (double t : {0.7, 1.5, 2.8, kPi}) {
    MapParams<double> p(t);
    for (int k = -1; k <= 1; ++k) {
      double lo = k * kPi - kHalfPi, prev = 2 * t;
      for (int j = 1; j < 400; ++j) {
        double x = lo + kPi * j / 400.0;
        double v = eval_f(p, x);
        // inside the saturated band both neighbours may equal -t or t exactly
        CHECK(v <= prev);
        if (std::fabs(t * tan_reduced(x)) < 15) CHECK(v < prev);
        prev = v;
      }
    }
  }

  // negative Schwarzian for t > 1
  int sampled = 0;
  while (sampled < 1000) {
    double t = T1(rng), x = X(rng);
    MapParams<double> p(t);
    double s = 0;
    try {
      s = schwarzian(p, x);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateDerivative);
      continue;
    }
    CHECK(s < 0);
    ++sampled;
  }
}

TEST_CASE("saturation introduces no representable error") {
  for (double u : {40.0, 41.0, 60.0}) CHECK(std::tanh(u) == 1.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MapParams<double>(0.0).validate(), Error);
  CHECK_THROWS_AS(MapParams<double>(3.2).validate(), Error);
  MapParams<double> p(1.0);
  p.saturation_threshold = 10;
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_NOTHROW(MapParams<double>(kPi).validate());
}
