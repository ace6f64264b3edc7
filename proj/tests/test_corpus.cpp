#include <doctest.h>

#include <cmath>
#include <set>

#include "riesz/constants.hpp"
#include "riesz/constructions.hpp"
#include "riesz/corpus.hpp"
#include "riesz/serialize.hpp"

using namespace riesz;

TEST_CASE("items depend only on seed and index") {
  CorpusSpec a;
  a.dim = 2;
  a.seed = 42;
  a.size = 5;
  CorpusSpec b = a;
  b.size = 50;
  const auto small = generate_corpus(a);
  for (std::size_t i = 0; i < small.size(); ++i) {
    const CorpusItem again = corpus_item(b, i);
    CHECK(again.description == small[i].description);
    CHECK(density_to_json(again.rho) == density_to_json(small[i].rho));
    CHECK(again.pair.radius_b == small[i].pair.radius_b);
  }
  b.seed = 43;
  CHECK(corpus_item(b, 0).description != small[0].description);
}

TEST_CASE("corpus contents") {
  CorpusSpec spec;
  spec.dim = 2;
  spec.size = 200;
  spec.delta = 0.25;
  std::set<CorpusKind> kinds;
  std::set<double> ratios;
  for (const auto& item : generate_corpus(spec)) {
    kinds.insert(item.kind);
    ratios.insert(item.kernel_ratio);
    CHECK(item.rho.mass() > 0.0);
    CHECK(item.pair.admissible());
    CHECK(item.pair.delta == 0.25);
    CHECK(item.pair.radius_e == doctest::Approx(item.rho.equivalent_radius()).epsilon(1e-12));
    CHECK(item.pair.radius_b / (2 * item.pair.radius_e) == doctest::Approx(item.kernel_ratio));
  }
  CHECK(kinds.size() == 7);
  CHECK(ratios == std::set<double>{0.25, 0.5, 0.75});
  spec.delta = 0.3;
  CHECK_THROWS_AS(corpus_item(spec, 0), ParameterError);
}

TEST_CASE("shell corpus stays inside the requested sandwich") {
  ShellCorpusSpec spec;
  spec.dim = 2;
  spec.size = 40;
  for (const auto& item : generate_shell_corpus(spec)) {
    const CenteringResult c = center(item.rho);
    CHECK(c.theta <= spec.theta_max);
    CHECK(c.theta > 0.0);
  }
}

TEST_CASE("audit of a small corpus") {
  const int n = 2;
  CorpusSpec spec;
  spec.dim = n;
  spec.size = 24;
  spec.seed = 5;
  spec.grid = audit_grid(n);
  const long double c = constant_ledger(n, 0.05).value("c_final");
  const InteractionOptions opt = audit_interaction_options(n);
  BallInteractionCache cache;
  for (const auto& item : generate_corpus(spec)) {
    const AuditRecord r = audit_item(item, cache, opt);
    CHECK(r.quadrature_tolerance > 0.0);
    CHECK(r.deficit >= -r.quadrature_tolerance);
    CHECK(r.deficit + r.quadrature_tolerance >= c * r.mass * r.mass * r.asymmetry * r.asymmetry);
    CHECK(r.asymmetry <= 1.0);
    if (r.asymmetry > 0.0) CHECK(std::isfinite(r.ratio()));
  }
  CHECK(cache.size() <= 3);
}

TEST_CASE("audit of the ball") {
  const BallPair pair = make_ball_pair(3, 1.0, 1.0, 0.5);
  CorpusItem item{0, 1, CorpusKind::ball, "ball", make_ball_density(pair, audit_grid(3)), pair, 0.5};
  BallInteractionCache cache;
  const AuditRecord r = audit_item(item, cache, audit_interaction_options(3));
  CHECK(std::abs(r.deficit) <= r.quadrature_tolerance);
  CHECK(r.asymmetry == 0.0);
  CHECK(std::isnan(r.ratio()));
}
