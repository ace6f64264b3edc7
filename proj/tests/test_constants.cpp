#include <doctest.h>

#include <cmath>
#include <map>

#include "riesz/constants.hpp"
#include "riesz/special.hpp"

using namespace riesz;

namespace {

// the chain is deterministic; each (N, delta) is assembled once
const ConstantLedger& ledger_for(int n, double delta) {
  static std::map<std::pair<int, double>, ConstantLedger> cache;
  auto it = cache.find({n, delta});
  if (it == cache.end()) it = cache.emplace(std::make_pair(n, delta), constant_ledger(n, delta)).first;
  return it->second;
}

long double rel(long double x, long double y) { return std::abs(x - y) / std::abs(y); }

}  // namespace

TEST_CASE("ledger entries") {
  ConstantLedger L(2, 0.1);
  L.set({"x", 1.5L, BoundKind::lower, "f", "r"});
  CHECK(L.contains("x"));
  CHECK(L.value("x") == 1.5L);
  L.set({"x", 2.5L, BoundKind::lower, "f", "r"});
  CHECK(L.entries().size() == 1);
  CHECK(L.value("x") == 2.5L);
  CHECK_THROWS_AS(L.set({"y", 0.0L, BoundKind::lower, "", ""}), CertificationError);
  CHECK_THROWS_AS(L.set({"y", -1.0L, BoundKind::lower, "", ""}), CertificationError);
  CHECK_THROWS_AS(L.set({"y", INFINITY, BoundKind::upper, "", ""}), CertificationError);
  CHECK_THROWS_AS(L.at("missing"), MissingEntryError);
  try {
    L.at("tau");
  } catch (const MissingEntryError& e) {
    CHECK(e.entry() == "tau");
  }
}

TEST_CASE("quadratic floor") {
  CHECK(quadratic_floor(2.0L) == 1.0L);
  CHECK(quadratic_floor(7.5L) == 1.0L);
  CHECK(quadratic_floor(0.0L) == 0.0L);
  for (long double b : {0.1L, 0.5L, 1.0L, 1.7L, 1.99L, 2.0L, 3.0L}) {
    long double m = 1e9L;
    for (int k = 0; k <= 200000; ++k) {
      const long double t = k / 200000.0L;
      m = std::min(m, t * t + b * (1 - t));
    }
    CHECK(std::abs(quadratic_floor(b) - m) < 1e-9L);
  }
  CHECK_THROWS_AS(quadratic_floor(-1.0L), ParameterError);
}

TEST_CASE("chord band measure") {
  // the whole sphere pair
  for (int n = 2; n <= 4; ++n) {
    const double S = unit_sphere_area(n);
    CHECK(chord_band_measure(n, 1.0, 5.0) == doctest::Approx(S * S).epsilon(1e-12));
    CHECK(chord_band_measure(n, 1.0, 0.0) == 0.0);
  }
  // N = 2: |w - w'| = 2 sin(psi/2)
  const double c = 1.0, w = 0.1;
  const double psi_lo = 2 * std::asin((c - w) / 2), psi_hi = 2 * std::asin((c + w) / 2);
  CHECK(chord_band_measure(2, c, w) == doctest::Approx(2 * M_PI * 2 * (psi_hi - psi_lo)).epsilon(1e-12));
}

TEST_CASE("constant chain over the sweep") {
  for (int n = 2; n <= 4; ++n) {
    for (double delta : {0.05, 0.1, 0.25}) {
      CAPTURE(n);
      CAPTURE(delta);
      const ConstantLedger& L = ledger_for(n, delta);
      for (const auto& e : L.entries()) {
        CHECK(std::isfinite(static_cast<double>(e.value)));
        CHECK(e.value > 0.0L);
        CHECK(!e.formula.empty());
        CHECK(!e.role.empty());
      }
      for (const auto& name : upstream_entry_names()) CHECK(L.contains(name));
      CHECK(L.value("tau") > 0.0L);
      CHECK(L.value("A_max") < 0.5L);
      CHECK(L.value("c_final") > 0.0L);
      const long double S = unit_sphere_area(n);
      CHECK(rel(L.value("C2"), (std::pow(2.0L, n) - 1) / S) < 1e-15L);
      CHECK(L.value("alpha") <= 0.5L);
      CHECK(L.value("K") * 1.5L * L.value("alpha") <= L.value("theta_prop2"));
      CHECK(L.value("c_large_difference") == 1.0L);
      CHECK(L.value("c_prop3") <= 1.0L);
      CHECK(L.value("quadratic_floor") == 1.0L);
      CHECK(L.value("c_final") <= L.value("c_prop3"));
    }
  }
}

TEST_CASE("missing upstream entries are named") {
  const ConstantLedger up = certify_upstream(2, 0.1);
  for (const auto& name : upstream_entry_names()) {
    ConstantLedger partial(2, 0.1);
    for (const auto& e : up.entries()) {
      if (e.name != name) partial.set(e);
    }
    bool thrown = false;
    try {
      assemble(partial);
    } catch (const MissingEntryError& e) {
      thrown = true;
      CHECK(e.entry() == name);
    }
    CHECK(thrown);
  }
}

TEST_CASE("larger phi constant never lowers the final constant") {
  for (int n : {2, 3}) {
    const ConstantLedger up = certify_upstream(n, 0.1);
    const long double base = assemble(up).value("c_final");
    long double prev = base;
    for (long double f : {1.1L, 1.5L, 3.0L, 10.0L}) {
      ConstantLedger raised = up;
      LedgerEntry e = up.at("c_phi_lower");
      e.value *= f;
      raised.set(e);
      const long double c = assemble(raised).value("c_final");
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(prev > base);
  }
}

TEST_CASE("tau must be positive") {
  ConstantLedger up = certify_upstream(2, 0.25);
  ConstantLedger broken(2, 0.25);
  for (const auto& e : up.entries()) {
    if (e.name != "tau") broken.set(e);
  }
  CHECK_THROWS_AS(prop2_constants(broken), MissingEntryError);
}

TEST_CASE("dimension one is out of scope") {
  CHECK_THROWS_AS(certify_upstream(1, 0.1), ParameterError);
}
