#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "riesz/geometry.hpp"
#include "riesz/oracles.hpp"
#include "riesz/special.hpp"
#include "riesz/spectral.hpp"

using namespace riesz;
using std::numbers::pi;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("gegenbauer basics") {
  for (double alpha : {0.0, 0.5, 1.0, 1.5, 3.0}) {
    for (double t : {-1.0, -0.3, 0.0, 0.6, 1.0}) CHECK(gegenbauer(alpha, 0, t) == 1.0);
    CHECK(gegenbauer(alpha, 1, 0.0) == 0.0);
  }
  for (int n = 0; n <= 10; ++n) {
    const double expect = factorial(n + 2) / (factorial(n) * factorial(2));
    CHECK(gegenbauer(1.5, n, 1.0) == doctest::Approx(expect).epsilon(1e-14));
  }
  for (int n = 1; n <= 12; ++n) {
    CHECK(gegenbauer(0.0, n, 1.0) == doctest::Approx(2.0 / n));
    CHECK(gegenbauer(0.0, n, 0.3) == doctest::Approx(2.0 / n * std::cos(n * std::acos(0.3))));
  }
  // Legendre at alpha = 1/2
  CHECK(gegenbauer(0.5, 2, 0.4) == doctest::Approx(0.5 * (3 * 0.16 - 1)));
}

TEST_CASE("normalized recurrence survives large degree") {
  for (double alpha : {0.0, 0.5, 1.0, 2.5}) {
    for (int n : {50, 400, 2000}) {
      const double r = gegenbauer_ratio(alpha, n, 0.37);
      CHECK(std::isfinite(r));
      CHECK(std::abs(r) <= 1.0);
      CHECK(gegenbauer_ratio(alpha, n, 1.0) == doctest::Approx(1.0));
    }
    CHECK(gegenbauer_ratio(alpha, 7, 0.2) == doctest::Approx(gegenbauer(alpha, 7, 0.2) / gegenbauer(alpha, 7, 1.0)));
  }
}

TEST_CASE("eigenvalue ratios and special values") {
  for (int n = 2; n <= 6; ++n) {
    for (double a : {0.1, 0.5, 1.0, 1.5, 1.9}) {
      const SpectralParams p{n, a, 10};
      CHECK(eigenvalue_closed_form(p, 2) / eigenvalue_closed_form(p, 1) == doctest::Approx(1.0 - a).epsilon(1e-12));
    }
    const SpectralParams half{n, 1.0, 10};
    CHECK(std::abs(eigenvalue_closed_form(half, 2)) <= 1e-15 * eigenvalue_closed_form(half, 0));
  }
  const double l31 = eigenvalue_closed_form(SpectralParams{3, 0.5, 10}, 1);
  CHECK(l31 == doctest::Approx(3 * pi / 8).epsilon(1e-14));
  CHECK(l31 == doctest::Approx(0.5 * gamma_constant(pair_from_a(3, 0.5, 0.1))).epsilon(1e-12));
}

TEST_CASE("closed form against adaptive quadrature") {
  for (int n : {2, 3, 5}) {
    for (double a : {0.1, 1.0, 1.9}) {
      const SpectralParams p{n, a, 50};
      const double floor = 1e-13 * eigenvalue_closed_form(p, 0);
      for (int ell : {0, 1, 2, 7, 25, 50}) {
        const double cf = eigenvalue_closed_form(p, ell);
        CHECK(std::abs(eigenvalue_quadrature(p, ell) - cf) <= 1e-10 * std::abs(cf) + floor);
      }
    }
  }
}

TEST_CASE("full cap limit of lambda_0") {
  for (int n = 2; n <= 6; ++n) {
    const double full = 0.5 * unit_sphere_area(n - 1) * beta_function(0.5 * (n - 1), 0.5);
    CHECK(eigenvalue_closed_form(SpectralParams{n, 2.0 - 1e-12, 4}, 0) == doctest::Approx(full).epsilon(1e-5));
    CHECK(full == doctest::Approx(0.5 * unit_sphere_area(n)).epsilon(1e-13));
  }
}

TEST_CASE("harmonic dimensions") {
  CHECK(harmonic_dimension(2, 0) == 1);
  for (int ell = 1; ell <= 20; ++ell) CHECK(harmonic_dimension(2, ell) == 2);
  for (int ell = 0; ell <= 20; ++ell) CHECK(harmonic_dimension(3, ell) == static_cast<std::uint64_t>(2 * ell + 1));
  CHECK(harmonic_dimension(4, 3) == 16);
  for (int n = 2; n <= 5; ++n) {
    for (int ell = 0; ell <= 6; ++ell) CHECK(harmonic_dimension(n, ell) == harmonic_dimension_bruteforce(n, ell));
  }
}

TEST_CASE("gap constant over the delta sweep") {
  for (int n = 2; n <= 4; ++n) {
    for (double delta : {0.05, 0.1, 0.25}) {
      for (double a : {2 * delta * delta, 0.5, 1.0, 2 * (1 - delta) * (1 - delta)}) {
        const Spectrum s = gap_constant(SpectralParams{n, a, 200});
        CHECK(s.gap_A < 0.5);
        CHECK(s.rank_bound_slack >= 0.0);
        CHECK(s.hs_partial <= s.hs_total);
        CHECK(s.hs_total == doctest::Approx(0.5 * unit_sphere_area(n) * s.lambdas[0]));
        for (std::size_t ell = 2; ell < s.lambdas.size(); ++ell) CHECK(std::abs(s.lambdas[ell]) < s.lambdas[1]);
      }
    }
  }
  CHECK_THROWS_AS(gap_constant(SpectralParams{1, 0.5, 10}), ParameterError);
  CHECK_THROWS_AS(gap_constant(SpectralParams{3, 2.0, 10}), ParameterError);
}

TEST_CASE("zonal Hessian form is diagonal in degree") {
  for (int n : {2, 3, 4}) {
    for (double a : {0.3, 1.0, 1.6}) {
      const ZonalHessianForm Q(n, a);
      std::vector<double> axis(n, 0.0);
      axis[0] = 1.0;
      for (int ell = 0; ell <= 12; ++ell) {
        ZonalExpansion F{n, {ZonalTerm{ell, 1.0, axis}}};
        const double lam = eigenvalue_closed_form(SpectralParams{n, a, 12}, ell);
        CHECK(std::abs(Q.apply(F) / Q.norm2(F) - lam) <= 1e-9 * eigenvalue_closed_form(SpectralParams{n, a, 12}, 0));
      }
    }
  }
}

TEST_CASE("zonal Hessian form bound on random orthogonal profiles") {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    for (double a : {0.2, 1.0, 1.8}) {
      const ZonalHessianForm Q(n, a);
      const Spectrum s = gap_constant(SpectralParams{n, a, 200});
      const double gamma = 2.0 * s.lambdas[1];
      for (int k = 0; k < 20; ++k) {
        const ZonalExpansion F = random_zonal_expansion(n, rng);
        CHECK(Q.affine_moment(F) < 1e-12 * std::sqrt(Q.norm2(F)));
        CHECK(Q.apply(F) <= s.gap_A * gamma * Q.norm2(F) * (1 + 1e-6));
      }
    }
  }
}

TEST_CASE("grid Hessian form") {
  const DirectionSet dirs = default_directions(3, 24);
  const double a = 0.8;
  const HessianForm Q(dirs, a);
  const std::vector<double> one(dirs.size(), 1.0);
  const double lam0 = eigenvalue_closed_form(SpectralParams{3, a, 4}, 0);
  CHECK(Q.apply(one) / Q.norm2(one) == doctest::Approx(lam0).epsilon(2e-2));

  std::mt19937_64 rng(8);
  std::vector<double> F = random_orthogonal_profile(dirs, rng);
  double m0 = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) m0 += dirs.weight(i) * F[i];
  CHECK(std::abs(m0) < 1e-10 * std::sqrt(Q.norm2(F)));
}
