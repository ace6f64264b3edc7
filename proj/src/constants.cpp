#include "riesz/constants.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <sstream>

#include "riesz/constructions.hpp"
#include "riesz/geometry.hpp"
#include "riesz/special.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

namespace {

using ld = long double;
constexpr ld kInf = std::numeric_limits<ld>::infinity();

// one ulp toward the conservative side after every chain step
ld down(ld x) { return std::nextafter(x, -kInf); }
ld up(ld x) { return std::nextafter(x, kInf); }

ld binom(int n, int k) {
  ld r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ld horner(const std::vector<ld>& c, ld x) {
  ld s = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

// Polynomials in the shell thickness s for the outer (sign = +1) and inner (sign = -1) side, R = 1:
// F(s) = int_1^{1+s} r^{N-1} dr (resp. int_{1-s}^1), b1 = F^2/2 - int_0^s x (1 + sign x)^{N-1} dx,
// b2 = int_0^s x^2 (1 + sign x)^{N-1} dx. The s^2 terms of b1 cancel exactly in the coefficients.
struct ShellPolys {
  std::vector<ld> F, b1, b2;
};

ShellPolys shell_polys(int n, int sign) {
  ShellPolys p;
  p.F.assign(n + 1, 0.0L);
  for (int k = 1; k <= n; ++k) p.F[k] = binom(n, k) * ((k % 2 == 1 || sign > 0) ? 1.0L : -1.0L) / n;
  p.b1.assign(2 * n + 1, 0.0L);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) p.b1[i + j] += 0.5L * p.F[i] * p.F[j];
  p.b2.assign(n + 3, 0.0L);
  for (int k = 0; k <= n - 1; ++k) {
    const ld s = (sign < 0 && k % 2 == 1) ? -1.0L : 1.0L;
    p.b1[k + 2] -= s * binom(n - 1, k) / (k + 2);
    p.b2[k + 3] += s * binom(n - 1, k) / (k + 3);
  }
  p.b1[2] = 0.0L;
  return p;
}

void require_dim(int dim, double delta) {
  if (dim < 2) throw ParameterError("constant chain: N >= 2 required (the spectral gap is stated for N >= 2)");
  if (!(delta > 0.0 && delta <= 0.5)) throw ParameterError("constant chain: delta must lie in (0, 1/2]");
}

std::vector<double> ratio_grid(double delta, int points) {
  std::vector<double> q(points);
  for (int k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.5 : static_cast<double>(k) / (points - 1);
    q[k] = std::clamp(delta + (1.0 - 2.0 * delta) * t, delta, 1.0 - delta);
  }
  return q;
}

void validate(const ChainOptions& opt) {
  if (opt.a_scan_points < 2 || opt.phi_pair_points < 2 || opt.sup_scan_points < 2) {
    throw ParameterError("constant chain: scan sizes must be at least 2");
  }
  if (!(opt.safety_lower > 0.0 && opt.safety_lower <= 1.0) || !(opt.safety_upper >= 1.0)) {
    throw ParameterError("constant chain: safety factors must satisfy 0 < lower <= 1 <= upper");
  }
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::exact: return "exact";
  }
  return "?";
}

ConstantLedger::ConstantLedger(int dim, double delta) : dim_(dim), delta_(delta) {}

void ConstantLedger::set(LedgerEntry entry) {
  if (!(entry.value > 0.0L) || !std::isfinite(entry.value)) {
    std::ostringstream msg;
    msg << "constant ledger: entry '" << entry.name << "' is not positive and finite ("
        << static_cast<double>(entry.value) << ")";
    throw CertificationError(msg.str());
  }
  for (auto& e : entries_) {
    if (e.name == entry.name) {
      e = std::move(entry);
      return;
    }
  }
  entries_.push_back(std::move(entry));
}

bool ConstantLedger::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const LedgerEntry& e) { return e.name == name; });
}

const LedgerEntry& ConstantLedger::at(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw MissingEntryError(name);
}

const std::vector<std::string>& upstream_entry_names() {
  static const std::vector<std::string> names = {
      "c_phi_lower", "C_phi_taylor", "Gamma_min", "Gamma_max", "A_max", "n0_max", "tau",
      "C0",          "C_prime_center", "c0",      "C_f",       "theta0", "C_shift", "C_sandwich"};
  return names;
}

ConstantLedger certify_upstream(int dim, double delta, const ChainOptions& opt) {
  require_dim(dim, delta);
  validate(opt);
  ConstantLedger ledger(dim, delta);

  // spectral gap and Gamma over the admissible ratios
  ld tau_raw = kInf, gamma_min = kInf, gamma_max = 0.0L, a_max = 0.0L;
  std::uint64_t n0_max = 0;
  for (double q : ratio_grid(delta, opt.a_scan_points)) {
    const BallPair pair = make_ball_pair(dim, 1.0, 2.0 * q, delta);
    const Spectrum sp = gap_constant(SpectralParams{dim, pair.spectral_a(), opt.ell_max});
    const ld gamma = gamma_constant(pair);
    tau_raw = std::min(tau_raw, (0.5L - sp.gap_A) * gamma);
    gamma_min = std::min(gamma_min, gamma);
    gamma_max = std::max(gamma_max, gamma);
    a_max = std::max(a_max, static_cast<ld>(sp.gap_A));
    n0_max = std::max(n0_max, sp.cutoff_n0);
  }

  ld c_min = kInf, C_max = 0.0L;
  for (double q : ratio_grid(delta, opt.phi_pair_points)) {
    const BallPair pair = make_ball_pair(dim, 1.0, 2.0 * q, delta);
    const PhiBoundCertificate cert =
        certify_phi_bounds(pair, opt.phi_scan_points, opt.safety_lower, opt.safety_upper);
    c_min = std::min(c_min, static_cast<ld>(cert.c_lower));
    C_max = std::max(C_max, static_cast<ld>(cert.c_taylor));
  }

  ledger.set({"c_phi_lower", down(c_min), BoundKind::lower, "safety_lower * min over r, R~ of |phi(r) - phi(R)| / scale",
              "lower bound for the decay of phi away from r = R, uniform over admissible R~/R (R = 1)"});
  ledger.set({"C_phi_taylor", up(C_max), BoundKind::upper,
              "safety_upper * max |phi(r) - phi(R) + Gamma R^{N-1}(r - R)| / (R^{N-2}(r - R)^2)",
              "second-order remainder of phi at r = R for |r - R| <= R/2"});
  ledger.set({"Gamma_min", down(opt.safety_lower * gamma_min), BoundKind::lower, "safety_lower * min Gamma",
              "smallest -R^{1-N} phi'(R) over the admissible range"});
  ledger.set({"Gamma_max", up(opt.safety_upper * gamma_max), BoundKind::upper, "safety_upper * max Gamma",
              "largest -R^{1-N} phi'(R) over the admissible range"});
  ledger.set({"A_max", up(a_max), BoundKind::upper, "max over the a-grid of the certified gap constant A",
              "worst spectral gap constant, A < 1/2"});
  ledger.set({"n0_max", static_cast<ld>(std::max<std::uint64_t>(n0_max, 1)), BoundKind::exact,
              "max over the a-grid of the eigenvalue cutoff rank", "rank beyond which no eigenvalue reaches lambda_1 / 2"});
  if (!(tau_raw > 0.0L)) {
    throw CertificationError("constant chain: (1/2 - A) Gamma is not positive on the admissible range");
  }
  ledger.set({"tau", down(opt.safety_lower * tau_raw), BoundKind::lower, "safety_lower * min over a of (1/2 - A) Gamma",
              "coercivity of the second variation on profiles orthogonal to affine functions"});

  const CenteringConstants k = centering_constants(dim);
  ledger.set({"C0", up(k.C0), BoundKind::upper, "2N / |S^{N-1}|", "radius factor of the ball on which the centring map is a degree-one map"});
  ledger.set({"C_prime_center", up(k.C_prime), BoundKind::upper, "safety_upper * sup |a.F_ball(a) - (|S|/N)|a|^2| / |a|^3",
              "cubic remainder of the centring field of the unit ball"});
  ledger.set({"c0", down(k.c0), BoundKind::lower, "1 / (C' C0^2)", "admissible L1 distance to the ball for the centring argument"});
  ledger.set({"C_f", up(k.C_f), BoundKind::upper, "2^N", "||rho - 1_E*||_1 <= C_f |E*| theta under the theta-sandwich"});
  ledger.set({"theta0", down(k.theta0), BoundKind::lower, "min(c0, 1/(2 C0)) / (C_f |S| / N)",
              "largest sandwich width for which centring is guaranteed"});
  ledger.set({"C_shift", up(k.C_shift), BoundKind::upper, "2 C_f (N/|S|)^{1/N}", "|a| <= C_shift ||rho||^{1/N} theta"});
  ledger.set({"C_sandwich", up(k.C_sandwich), BoundKind::upper, "1 + 2 C_f",
              "sandwich width after recentring, in units of the original width"});
  return ledger;
}

double chord_band_measure(int dim, double chord, double width) {
  if (dim < 2) throw ParameterError("chord_band_measure: N >= 2 required");
  const double lo = std::clamp(chord - width, 0.0, 2.0);
  const double hi = std::clamp(chord + width, 0.0, 2.0);
  // |w - w'|^2 = 2 - 2t
  const double t_hi = 1.0 - 0.5 * lo * lo;
  const double t_lo = 1.0 - 0.5 * hi * hi;
  const double band = zonal_weight_integral(dim, t_lo) - zonal_weight_integral(dim, t_hi);
  return unit_sphere_area(dim) * unit_sphere_area(dim - 1) * std::max(band, 0.0);
}

void prop2_constants(ConstantLedger& ledger, const ChainOptions& opt) {
  validate(opt);
  const int n = ledger.dim();
  const ld S = unit_sphere_area(n);
  const ld tau = ledger.value("tau");
  const ld gamma_max = ledger.value("Gamma_max");
  const ld C_taylor = ledger.value("C_phi_taylor");

  const ld two_n = std::ldexp(1.0L, n);
  const ld C1 = up(std::sqrt(up(S / 2.0L)));
  const ld C2 = up((two_n - 1.0L) / S);
  const ld C2p = up((two_n - 1.0L) / n);
  ledger.set({"C1", C1, BoundKind::upper, "sqrt(|S^{N-1}| / 2)",
              "||rho||_1 A[rho] <= C1 (||F+||_2^2 + ||F-||_2^2)^{1/2} for centred sandwiched rho"});
  ledger.set({"C2", C2, BoundKind::upper, "(2^N - 1) / |S^{N-1}|", "||F+-||_inf <= C2 theta ||rho||_1"});
  ledger.set({"C2_prime", C2p, BoundKind::upper, "(2^N - 1) / N", "C2 ||rho||_1 = C2' R^N"});

  // remainder of the shell expansion, both sides, s in (0, 1/2]
  ld sup = 0.0L;
  for (int sign : {+1, -1}) {
    const ShellPolys p = shell_polys(n, sign);
    for (int k = 1; k <= opt.sup_scan_points; ++k) {
      const ld s = 0.5L * k / opt.sup_scan_points;
      const ld F = horner(p.F, s);
      const ld ratio = (gamma_max * std::max(horner(p.b1, s), 0.0L) + C_taylor * horner(p.b2, s)) / (F * F * F);
      sup = std::max(sup, ratio);
    }
  }
  const ld C_int = up(opt.safety_upper * sup);
  ledger.set({"C_interaction", C_int, BoundKind::upper,
              "safety_upper * sup_s (Gamma_max (b1)_+ + C_phi_taylor b2) / F^3",
              "cubic remainder of the interaction of a shell profile with the ball"});

  const ld theta_shell = std::min({(std::pow(1.5L, n) - 1.0L) / (two_n - 1.0L), 1.0L / two_n, 0.5L});
  ledger.set({"theta_shell", down(theta_shell), BoundKind::lower, "min(((3/2)^N - 1)/(2^N - 1), 2^{-N}, 1/2)",
              "sandwich width keeping the shell radii within [R/2, 3R/2]"});
  const ld theta = down(std::min(down(tau / (2.0L * C_int * C2p)), theta_shell));
  ledger.set({"theta_prop2", theta, BoundKind::lower, "min(tau / (2 C_interaction C2'), theta_shell)",
              "sandwich width below which the cubic remainder costs at most tau/2"});

  // self-energy: measure of the near-diagonal chord band divided by theta
  ld sup_self = 0.0L;
  const std::vector<double> qs = ratio_grid(ledger.delta(), opt.sup_scan_points);
  for (int j = 1; j <= opt.sup_scan_points; ++j) {
    const double t = static_cast<double>(theta) * j / opt.sup_scan_points;
    for (double q : qs) sup_self = std::max(sup_self, static_cast<ld>(chord_band_measure(n, 2.0 * q, 2.0 * t) / t));
  }
  const ld C_self = up(2.5L * opt.safety_upper * sup_self);
  ledger.set({"C_self", C_self, BoundKind::upper, "(5/2) safety_upper * sup_{theta, a} |{| |w - w'| - sqrt(2a) | < 2 theta}| / theta",
              "self-interaction of the shell profiles across the kernel boundary"});

  const ld c = down(tau / up(2.0L * C1 * C1));
  ledger.set({"c_prop2", c, BoundKind::lower, "tau / (2 C1^2)", "quadratic coefficient for centred sandwiched densities"});
  ledger.set({"C_prop2", up(C_self * C2 * C2 / c), BoundKind::upper, "C_self C2^2 / c_prop2",
              "theta^3 coefficient for centred sandwiched densities"});
}

void prop3_constants(ConstantLedger& ledger) {
  const int n = ledger.dim();
  const ld S = unit_sphere_area(n);
  const ld c = ledger.value("c_prop2");
  const ld C = ledger.value("C_prop2");
  const ld theta = ledger.value("theta_prop2");
  const ld theta0 = ledger.value("theta0");
  const ld C3 = ledger.value("C_sandwich");

  const ld K = up(12.0L * S / down(n * c));
  ledger.set({"K", K, BoundKind::upper, "12 |S^{N-1}| / (N c_prop2)", "sandwich width per unit asymmetry"});
  const ld cap_mass = down(1.0L / K);
  const ld cap_center = down(2.0L * theta0 / up(3.0L * K));
  const ld cap_shell = down(2.0L * theta / up(3.0L * C3 * K));
  const ld cap_rem = down(2.0L / up(3.0L * 2.0L * C * C3 * C3 * C3 * K * K * K));
  ledger.set({"alpha_cap_mass", cap_mass, BoundKind::lower, "N c_prop2 / (12 |S^{N-1}|)", "keeps the competitor width below 1/2"});
  ledger.set({"alpha_cap_center", cap_center, BoundKind::lower, "(2/(3K)) theta0", "keeps the competitor inside the centring regime"});
  ledger.set({"alpha_cap_shell", cap_shell, BoundKind::lower, "(2/3) theta_prop2 / (C_sandwich K)",
              "keeps the recentred competitor inside the sandwich regime"});
  ledger.set({"alpha_cap_remainder", cap_rem, BoundKind::lower, "(2/3) / (2 C_prop2 C_sandwich^3 K^3)",
              "makes the theta^3 remainder at most half of the quadratic term"});
  ledger.set({"alpha", std::min({cap_mass, cap_center, cap_shell, cap_rem}), BoundKind::lower, "min of the four caps",
              "asymmetry threshold of the small-asymmetry bound"});
  ledger.set({"c_large_difference", 1.0L, BoundKind::exact, "1",
              "constant when the competitor changes the interaction by at least ||rho||^2 A^2"});
  ledger.set({"c_prop3", down(std::min(1.0L, c / 8.0L)), BoundKind::lower, "min(1, c_prop2 / 8)",
              "deficit constant for A[rho] <= alpha"});
}

long double quadratic_floor(long double b) {
  if (b < 0.0L) throw ParameterError("quadratic_floor: b >= 0 required");
  return b >= 2.0L ? 1.0L : b * (1.0L - b / 4.0L);
}

void theorem_constants(ConstantLedger& ledger) {
  const int n = ledger.dim();
  const ld S = unit_sphere_area(n);
  const ld c_phi = ledger.value("c_phi_lower");
  const ld alpha = ledger.value("alpha");
  const ld c3 = ledger.value("c_prop3");

  const ld b_min = n * std::pow(1.5L, n - 1);
  const ld m = quadratic_floor(b_min);
  ledger.set({"b_min", down(b_min), BoundKind::lower, "N (3/2)^{N-1}", "smallest slope ratio in the one-dimensional bound"});
  // 1 is exact once b_min >= 2
  ledger.set({"quadratic_floor", b_min >= 2.0L ? m : down(m), b_min >= 2.0L ? BoundKind::exact : BoundKind::lower,
              "inf_{0<=t<=1} t^2 + b_min (1 - t)",
              "one-dimensional minimisation; equals 1 once b >= 2"});
  const ld cp = down(c_phi * std::pow(2.0L / 3.0L, n - 1) / up(8.0L * S) * m);
  ledger.set({"c_prime", cp, BoundKind::lower, "c_phi_lower (2/3)^{N-1} / (8 |S^{N-1}|) * quadratic_floor",
              "D[rho] >= c' ||rho - 1_E||_1^2 for the set E of the bathtub rearrangement"});
  const ld c_char = down(c3 * alpha * alpha);
  ledger.set({"c_char", c_char, BoundKind::lower, "c_prop3 alpha^2", "D[1_E] >= c_char |E|^2 for sets with A >= alpha"});
  const ld inv_sqrt_cp = up(1.0L / std::sqrt(cp));
  const ld K1 = up(0.5L * inv_sqrt_cp + up(1.0L / std::sqrt(c_char)) * up(std::sqrt(1.0L + inv_sqrt_cp)));
  ledger.set({"K1", K1, BoundKind::upper, "c'^{-1/2} / 2 + c_char^{-1/2} (1 + c'^{-1/2})^{1/2}",
              "A[rho] <= K1 (D / ||rho||^2)^{1/4} in the large-asymmetry case"});
  ledger.set({"c_double_prime", down(1.0L / (K1 * K1)), BoundKind::lower, "K1^{-2}",
              "A[rho]^2 <= (D / ||rho||^2)^{1/2} / c''"});
  const ld K1_4 = up(up(K1 * K1) * up(K1 * K1));
  const ld c_large = down(alpha * alpha / K1_4);
  ledger.set({"c_large_asymmetry", c_large, BoundKind::lower, "alpha^2 / K1^4", "deficit constant for A[rho] > alpha"});
  ledger.set({"c_final", std::min(c3, c_large), BoundKind::lower, "min(c_prop3, alpha^2 / K1^4)",
              "D[rho] >= c ||rho||_1^2 A[rho]^2 for all admissible rho"});
}

ConstantLedger assemble(const ConstantLedger& upstream, const ChainOptions& opt) {
  ConstantLedger ledger(upstream.dim(), upstream.delta());
  require_dim(ledger.dim(), ledger.delta());
  for (const auto& name : upstream_entry_names()) ledger.set(upstream.at(name));
  prop2_constants(ledger, opt);
  prop3_constants(ledger);
  theorem_constants(ledger);
  return ledger;
}

ConstantLedger constant_ledger(int dim, double delta, const ChainOptions& opt) {
  return assemble(certify_upstream(dim, delta, opt), opt);
}

}  // namespace riesz
