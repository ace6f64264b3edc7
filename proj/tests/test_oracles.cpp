#include <doctest.h>

#include <cmath>

#include "riesz/generators.hpp"
#include "riesz/geometry.hpp"
#include "riesz/oracles.hpp"
#include "riesz/special.hpp"
#include "riesz/spectral.hpp"

using namespace riesz;

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("intersection volume oracle") {
  const BallPair p = make_ball_pair(3, 1.0, 0.6, 0.1);
  SUBCASE("disjoint") {
    const OracleEstimate e = mc_intersection_volume(p, 1.7, 100000, 4);
    CHECK(e.value == 0.0);
    CHECK(e.std_error == 0.0);
  }
  SUBCASE("containment") {
    const OracleEstimate e = mc_intersection_volume(p, 0.2, 1 << 20, 4);
    CHECK(std::abs(e.value - ball_volume(3, 0.6)) <= 3.0 * e.std_error + 1e-15);
  }
  SUBCASE("lens") {
    for (int n = 2; n <= 4; ++n) {
      const BallPair q = make_ball_pair(n, 1.0, 0.9, 0.1);
      for (double r : {0.3, 0.9, 1.5}) {
        const OracleEstimate e = mc_intersection_volume(q, r, 1 << 20, 17 + n);
        CHECK(std::abs(e.value - phi(q, r)) <= 3.0 * e.std_error);
      }
    }
  }
  SUBCASE("deterministic and sqrt scaling") {
    const OracleEstimate a = mc_intersection_volume(p, 0.9, 1 << 18, 9);
    const OracleEstimate b = mc_intersection_volume(p, 0.9, 1 << 18, 9);
    CHECK(a.value == b.value);
    CHECK(a.seed.value() == 9);
    double ratio = 0.0;
    for (std::uint64_t s = 0; s < 8; ++s) {
      const OracleEstimate x = mc_intersection_volume(p, 0.9, 1 << 17, 100 + s);
      const OracleEstimate y = mc_intersection_volume(p, 0.9, 1 << 18, 100 + s);
      ratio += x.std_error / y.std_error / 8.0;
    }
    CHECK(ratio >= 1.3);
    CHECK(ratio <= 1.5);
  }
}

TEST_CASE("interaction oracle") {
  const BallPair p = make_ball_pair(2, 1.0, 0.8, 0.1);
  const Density b = make_ball_density(p);
  SUBCASE("zero density") {
    const DirectionSet d = b.directions();
    const Density z(d, std::vector<RayProfile>(d.size(), RayProfile{{0.0, 1.0}, {0.0}}));
    CHECK(mc_interaction(z, b, 0.8, 10000, 1).value == 0.0);
  }
  SUBCASE("ball against radial quadrature") {
    const OracleEstimate e = mc_interaction(b, b, 0.8, 1 << 20, 2);
    const OracleEstimate q = ball_interaction_radial(p);
    CHECK(std::abs(e.value - q.value) <= 3.0 * e.std_error);
  }
  SUBCASE("symmetry") {
    const Density g = perturbed_ball(2, 1.0, 3, 0.2);
    const Density h = translated_ball(2, 0.7, {0.5, 0.1});
    const OracleEstimate gh = mc_interaction(g, h, 0.8, 1 << 20, 3);
    const OracleEstimate hg = mc_interaction(h, g, 0.8, 1 << 20, 4);
    CHECK(std::abs(gh.value - hg.value) <= 3.0 * std::hypot(gh.std_error, hg.std_error));
  }
}

TEST_CASE("Funk-Hecke oracle") {
  for (int n = 2; n <= 6; ++n) {
    for (double a : {0.1, 0.5, 1.0, 1.5, 1.9}) {
      const SpectralParams p{n, a, 50};
      const double lam0 = eigenvalue_closed_form(p, 0);
      for (int ell : {0, 1, 3, 10, 30, 50}) {
        const OracleEstimate e = funk_hecke_direct(p, ell);
        const double cf = eigenvalue_closed_form(p, ell);
        CHECK(std::abs(e.value - cf) <= 1e-10 * std::abs(cf) + 1e-13 * lam0);
        CHECK(e.std_error == 0.0);
      }
    }
    const double lam0 = 0.5 * unit_sphere_area(n - 1) * zonal_weight_integral(n, 1.0 - 0.7);
    CHECK(funk_hecke_direct(SpectralParams{n, 0.7, 4}, 0).value == doctest::Approx(lam0).epsilon(1e-12));
    CHECK(funk_hecke_direct(SpectralParams{n, 1e-9, 4}, 1).value < 1e-3);
  }
}
