#include <doctest.h>

#include <cmath>
#include <numbers>

#include "riesz/geometry.hpp"
#include "riesz/oracles.hpp"
#include "riesz/special.hpp"
#include "riesz/spectral.hpp"

using namespace riesz;
using std::numbers::pi;

TEST_CASE("sphere areas") {
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * pi / 3));
  CHECK_THROWS_AS(unit_sphere_area(0), std::domain_error);
}

TEST_CASE("cap volume limits") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(cap_volume(n, 1.3, -1.3) == doctest::Approx(ball_volume(n, 1.3)).epsilon(1e-13));
    CHECK(cap_volume(n, 1.3, 0.0) == doctest::Approx(0.5 * ball_volume(n, 1.3)).epsilon(1e-13));
    CHECK(cap_volume(n, 1.3, 1.3) == doctest::Approx(0.0));
  }
}

TEST_CASE("admissibility") {
  CHECK_NOTHROW(make_ball_pair(2, 1.0, 1.0, 0.5));
  CHECK_THROWS_AS(make_ball_pair(2, 1.0, 2.0, 0.1), ParameterError);
  CHECK_THROWS_AS(make_ball_pair(3, 1.0, 0.1, 0.1), ParameterError);
  const BallPair p = pair_from_a(3, 0.5, 0.1);
  CHECK(p.spectral_a() == doctest::Approx(0.5));
  CHECK(p.admissible());
}

TEST_CASE("phi special cases") {
  const BallPair p = make_ball_pair(2, 1.0, 1.0, 0.5);
  CHECK(phi(p, 0.0) == doctest::Approx(pi));
  for (int n = 1; n <= 5; ++n) {
    const BallPair q = make_ball_pair(n, 1.0, 0.8, 0.1);
    CHECK(phi(q, 1.8) == 0.0);
    CHECK(phi(q, 5.0) == 0.0);
    CHECK(phi(q, 0.1) == doctest::Approx(ball_volume(n, 0.8)));
    CHECK(phi_derivative(q, 1.8 + 1.0) == 0.0);
  }
}

TEST_CASE("phi against the Monte Carlo volume oracle") {
  const BallPair p = make_ball_pair(3, 1.0, 1.0, 0.5);
  const OracleEstimate est = mc_intersection_volume(p, 0.7, 10'000'000, 11);
  CHECK(std::abs(est.value - phi(p, 0.7)) <= 3.0 * est.std_error);
}

TEST_CASE("phi is non-increasing with compact support") {
  for (int n = 1; n <= 5; ++n) {
    for (double rb : {0.3, 1.0, 1.7}) {
      const BallPair p = make_ball_pair(n, 1.0, rb, 0.1);
      double prev = phi(p, 0.0);
      for (int k = 1; k <= 400; ++k) {
        const double r = (1.0 + rb) * 1.1 * k / 400.0;
        const double f = phi(p, r);
        CHECK(f <= prev + 1e-14 * prev);
        prev = f;
      }
      CHECK(prev == 0.0);
    }
  }
}

TEST_CASE("phi derivative at R") {
  const BallPair p = make_ball_pair(2, 1.0, std::sqrt(2.0), 0.1);
  const double lambda1 = eigenvalue_closed_form(SpectralParams{2, 1.0, 10}, 1);
  CHECK(lambda1 == doctest::Approx(1.0));
  CHECK(phi_derivative(p, 1.0) == doctest::Approx(-2.0 * lambda1).epsilon(1e-12));
  const double h = 1e-6;
  CHECK((phi(p, 1.0 + h) - phi(p, 1.0 - h)) / (2 * h) == doctest::Approx(-2.0).epsilon(1e-7));

  for (int n = 2; n <= 5; ++n) {
    for (double q : {0.15, 0.3, 0.5, 0.7, 0.85}) {
      const BallPair s = make_ball_pair(n, 1.3, 2.6 * q, 0.1);
      CHECK(phi_derivative(s, 1.3) < 0.0);
      const double fd = (phi(s, 1.3 + h) - phi(s, 1.3 - h)) / (2 * h);
      CHECK(phi_derivative(s, 1.3) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("Gamma") {
  CHECK(gamma_constant(pair_from_a(2, 1.0, 0.1)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gamma_constant(make_ball_pair(3, 1.0, 1.0, 0.1)) == doctest::Approx(0.75 * pi).epsilon(1e-12));
  for (int n = 2; n <= 5; ++n) {
    for (double a = 0.05; a < 1.9; a += 0.15) {
      const BallPair p = pair_from_a(n, a, 0.02);
      CHECK(gamma_constant(p) > 0.0);
      CHECK(gamma_constant(p) == doctest::Approx(2.0 * eigenvalue_closed_form(SpectralParams{n, a, 10}, 1)).epsilon(1e-10));
    }
  }
}

TEST_CASE("phi bound certificate") {
  const BallPair p = make_ball_pair(2, 1.0, 1.0, 0.5);
  const PhiBoundCertificate c = certify_phi_bounds(p, 1000);
  CHECK(c.c_lower > 0.0);
  CHECK(std::isfinite(c.c_taylor));
  CHECK(phi_bounds_violation(p, c.c_lower, c.c_taylor, 10000) <= 0.0);
  CHECK(phi_bounds_violation(p, 2.0 * c.c_lower / c.safety_lower, c.c_taylor, 10000) > 0.0);

  for (int n = 2; n <= 4; ++n) {
    for (double q : {0.05, 0.5, 0.95}) {
      const BallPair s = make_ball_pair(n, 1.0, 2 * q, 0.05);
      const PhiBoundCertificate cs = certify_phi_bounds(s, 1000);
      CHECK(cs.c_lower > 0.0);
      CHECK(phi_bounds_violation(s, cs.c_lower, cs.c_taylor, 10000) <= 0.0);
    }
  }
}
