// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 when every criterion passes
// or fails only as declared with --known-unattainable.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "riesz/constants.hpp"
#include "riesz/constructions.hpp"
#include "riesz/corpus.hpp"
#include "riesz/geometry.hpp"
#include "riesz/oracles.hpp"
#include "riesz/special.hpp"
#include "riesz/spectral.hpp"

using namespace riesz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool unattainable_part = false;  // the failing part is one declared unattainable
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no separate budget
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const std::vector<int> kDims = {2, 3, 4, 5, 6};
const std::vector<double> kAs = {0.1, 0.5, 1.0, 1.5, 1.9};

// largest delta for which a is admissible
BallPair pair_at(int n, double a) {
  const double q = std::sqrt(2.0 * a) / 2.0;
  return pair_from_a(n, a, std::min(q, 1.0 - q));
}

Outcome closed_form_vs_quadrature() {
  double worst = 0.0;
  int count = 0, bad = 0;
  for (int n : kDims) {
    for (double a : kAs) {
      const SpectralParams p{n, a, 50};
      // relative error is meaningless at exact zeros (a = 1, even degree); floor at the lambda_0 cancellation level
      const double floor = 1e-13 * eigenvalue_closed_form(p, 0);
      for (int ell = 0; ell <= 50; ++ell) {
        const double cf = eigenvalue_closed_form(p, ell);
        const double q = eigenvalue_quadrature(p, ell);
        const double err = std::abs(q - cf) / (std::abs(cf) + 1e-3 * eigenvalue_closed_form(p, 0));
        worst = std::max(worst, err);
        bad += std::abs(q - cf) > 1e-10 * std::abs(cf) + floor;
        ++count;
      }
    }
  }
  return {bad == 0, std::to_string(count) + " eigenvalues, max |error|/(|lambda| + 1e-3 lambda_0) " + fmt("%.2e", worst)};
}

Outcome half_gamma_identity() {
  double worst = 0.0;
  for (int n : kDims) {
    for (double a : kAs) {
      const double g = gamma_constant(pair_at(n, a));
      const double l1 = eigenvalue_closed_form(SpectralParams{n, a, 10}, 1);
      worst = std::max(worst, std::abs(0.5 * g - l1) / l1);
    }
  }
  return {worst <= 1e-10, "25 points, max relative error " + fmt("%.2e", worst)};
}

Outcome spectral_gap() {
  bool gap_ok = true, strict_ok = true, bound_ok = true, tail_ok = true;
  double max_A = 0.0;
  std::vector<double> worst_res(7, 0.0);
  for (int n : kDims) {
    for (double a : kAs) {
      const Spectrum s = gap_constant(SpectralParams{n, a, 200});
      max_A = std::max(max_A, s.gap_A);
      gap_ok = gap_ok && s.gap_A < 0.5;
      const int top = std::max(s.cutoff_ell, 200);
      const double l1 = eigenvalue_closed_form(s.params, 1);
      for (int ell = 2; ell <= top; ++ell) strict_ok = strict_ok && eigenvalue_closed_form(s.params, ell) < l1;
      // partial sums in degree order stay below the exact budget
      long double partial = 0.0L;
      for (int ell = 0; ell <= 200; ++ell) {
        const long double l = eigenvalue_closed_form(s.params, ell);
        partial += static_cast<long double>(harmonic_dimension(n, ell)) * l * l;
        bound_ok = bound_ok && partial <= s.hs_total * (1 + 1e-12);
      }
      const double res200 = static_cast<double>(s.hs_total - partial) / s.hs_total;
      worst_res[n] = std::max(worst_res[n], res200);
      // independent tail: summing on to degree 3200 must remove most of the residual at the 1/L rate of a jump kernel
      long double more = partial;
      for (int ell = 201; ell <= 3200; ++ell) {
        const long double l = eigenvalue_closed_form(s.params, ell);
        more += static_cast<long double>(harmonic_dimension(n, ell)) * l * l;
      }
      const double res3200 = static_cast<double>(s.hs_total - more) / s.hs_total;
      tail_ok = tail_ok && res3200 >= -1e-12 && res3200 < 0.25 * res200;
    }
  }
  const bool res_ok = worst_res[2] <= 1e-3 && *std::max_element(worst_res.begin() + 3, worst_res.end()) <= 1e-6;
  std::ostringstream d;
  d << "max A " << fmt("%.4f", max_A) << (gap_ok ? " < 1/2" : " NOT < 1/2") << "; strict gap up to rank(n0) "
    << (strict_ok ? "ok" : "VIOLATED") << "; partial sums <= budget " << (bound_ok ? "ok" : "VIOLATED")
    << "; direct tail summation " << (tail_ok ? "consistent" : "INCONSISTENT") << "; relative residual at l=200:";
  for (int n : kDims) d << " N=" << n << " " << fmt("%.1e", worst_res[n]);
  d << " (thresholds 1e-3 for N=2, 1e-6 for N>=3";
  if (!res_ok) d << ", not met: the cap kernel has a jump so the tail decays like 1/L";
  d << ")";
  Outcome o{gap_ok && strict_ok && bound_ok && tail_ok && res_ok, d.str()};
  o.unattainable_part = gap_ok && strict_ok && bound_ok && tail_ok && !res_ok;
  return o;
}

Outcome hessian_form() {
  std::mt19937_64 rng(20240601);
  int count = 0, bad = 0;
  double worst = -1e300, worst_moment = 0.0;
  for (int n : kDims) {
    for (double a : kAs) {
      const ZonalHessianForm Q(n, a);
      const Spectrum s = gap_constant(SpectralParams{n, a, 200});
      const double gamma = gamma_constant(pair_at(n, a));
      for (int k = 0; k < 200; ++k) {
        const ZonalExpansion F = random_zonal_expansion(n, rng);
        const double nf = Q.norm2(F);
        worst_moment = std::max(worst_moment, Q.affine_moment(F) / std::sqrt(nf));
        const double ratio = Q.apply(F) / (s.gap_A * gamma * nf);
        worst = std::max(worst, ratio);
        bad += ratio > 1 + 1e-6;
        ++count;
      }
    }
  }
  return {bad == 0 && worst_moment < 1e-10,
          std::to_string(count) + " profiles over 25 (N, a) points, max Q/(A Gamma |F|^2) " + fmt("%.6f", worst) +
              ", max affine moment " + fmt("%.1e", worst_moment)};
}

Outcome phi_validation() {
  struct Config {
    int n;
    double rb;
  };
  const std::vector<Config> configs = {{2, 0.6}, {3, 1.0}, {4, 1.4}};
  int bad_mc = 0, first_pass = 0, points = 0;
  std::ostringstream reruns;
  bool mono = true, support = true;
  double worst_z = 0.0;
  std::uint64_t task = 0;
  for (const auto& c : configs) {
    const BallPair p = make_ball_pair(c.n, 1.0, c.rb, 0.05);
    const double end = p.radius_e + p.radius_b;
    for (int k = 0; k < 20; ++k) {
      const double r = end * (k + 0.5) / 20.0;
      auto zscore = [&](std::uint64_t samples, std::uint64_t seed) {
        const OracleEstimate e = mc_intersection_volume(p, r, samples, seed);
        const double diff = std::abs(e.value - phi(p, r));
        return e.std_error > 0.0 ? diff / e.std_error : (diff == 0.0 ? 0.0 : INFINITY);
      };
      const double z = zscore(10'000'000, derive_seed(5, task));
      worst_z = std::max(worst_z, z);
      if (z > 3.0) {
        // 60 points at 3 sigma trip about one time in six for an exact phi: one independent rerun at 4x samples
        ++first_pass;
        const double z2 = zscore(40'000'000, derive_seed(6, task));
        reruns << " r=" << fmt("%.3f", r) << " N=" << c.n << " z " << fmt("%.2f", z) << " -> " << fmt("%.2f", z2);
        bad_mc += z2 > 3.0;
      }
      ++task;
      ++points;
    }
    const double inner = std::abs(p.radius_e - p.radius_b);
    const double full = ball_volume(c.n, std::min(p.radius_e, p.radius_b));
    double prev = phi(p, 0.0);
    for (int k = 0; k <= 20000; ++k) {
      const double r = 1.2 * end * k / 20000.0;
      const double f = phi(p, r);
      mono = mono && f <= prev;
      prev = f;
      if (r >= end) support = support && f == 0.0;
      else support = support && f > 0.0;
      if (r <= inner) support = support && f == full;
    }
  }
  std::ostringstream d;
  d << points << " radii at 1e7 samples, max |MC - phi|/sigma " << fmt("%.2f", worst_z) << ", " << first_pass
    << " beyond 3 sigma";
  if (first_pass > 0) d << " (rerun:" << reruns.str() << ")";
  d << ", " << bad_mc << " confirmed; monotone " << (mono ? "yes" : "NO") << "; support and plateau " << (support ? "exact" : "WRONG");
  return {bad_mc == 0 && mono && support, d.str()};
}

Outcome competitor_criterion() {
  const std::vector<double> thetas = {0.02, 0.05, 0.1, 0.2, 0.35, 0.5};
  int count = 0;
  int fails[5] = {0, 0, 0, 0, 0};
  double worst_mass = 0.0;
  for (int n : {2, 3}) {
    CorpusSpec spec;
    spec.dim = n;
    spec.seed = 77;
    spec.delta = 0.25;
    int taken = 0;
    for (std::size_t i = 0; taken < 100; ++i) {
      const CorpusItem item = corpus_item(spec, i);
      if (!item.rho.centered()) continue;
      const double theta = thetas[taken % thetas.size()];
      // ray integrals are exact for the piecewise constant representation; the grid error is rounding
      const double grid_tol = 1e-12 * item.rho.mass();
      const CompetitorResult res = competitor(item.rho, theta);
      const CompetitorCheck chk = verify_competitor(item.rho, res, theta, 10.0 * grid_tol);
      fails[0] += !chk.mass_ok();
      fails[1] += !chk.sandwich_ok();
      fails[2] += !chk.order_ok();
      fails[3] += !chk.distance_ok();
      fails[4] += !chk.concentration_ok();
      worst_mass = std::max(worst_mass, chk.mass_error);
      ++taken;
      ++count;
    }
  }
  std::ostringstream d;
  d << count << " centred densities; failures mass/sandwich/order/distance/concentration = " << fails[0] << "/"
    << fails[1] << "/" << fails[2] << "/" << fails[3] << "/" << fails[4] << "; max relative mass error "
    << fmt("%.1e", worst_mass);
  return {fails[0] + fails[1] + fails[2] + fails[3] + fails[4] == 0, d.str()};
}

Outcome centering_criterion() {
  int count = 0, bad_res = 0, bad_idem = 0, bad_shift = 0, sandwich_ok = 0;
  double worst_shift_ratio = 0.0;
  for (int n : {2, 3}) {
    const long double C_shift = constant_ledger(n, 0.1).value("C_shift");
    ShellCorpusSpec spec;
    spec.dim = n;
    spec.seed = 31;
    spec.size = 50;
    for (const auto& item : generate_shell_corpus(spec)) {
      const CenteringResult c = center(item.rho);
      bad_res += !(c.residual <= c.tolerance);
      // residual tolerance in shift units through the ball Jacobian (|S|/N) R^{N-1}
      const double R = item.rho.equivalent_radius();
      const double shift_tol = 10.0 * c.tolerance * n / (unit_sphere_area(n) * std::pow(R, n - 1));
      const CenteringResult again = center(translate(item.rho, c.shift));
      double norm_again = 0.0, norm_a = 0.0;
      for (int k = 0; k < n; ++k) {
        norm_again += again.shift[k] * again.shift[k];
        norm_a += c.shift[k] * c.shift[k];
      }
      bad_idem += std::sqrt(norm_again) > shift_tol;
      const double bound = static_cast<double>(C_shift) * std::pow(item.rho.mass(), 1.0 / n) * c.theta;
      bad_shift += std::sqrt(norm_a) > bound;
      worst_shift_ratio = std::max(worst_shift_ratio, std::sqrt(norm_a) / bound);
      sandwich_ok += c.sandwich_bound_ok;
      ++count;
    }
  }
  std::ostringstream d;
  d << count << " shell-sandwiched densities; residual failures " << bad_res << ", idempotence failures " << bad_idem
    << ", |a| bound failures " << bad_shift << " (max |a|/(C |rho|^{1/N} theta) " << fmt("%.3f", worst_shift_ratio)
    << "); recentred sandwich within ledger widening " << sandwich_ok << "/" << count;
  return {bad_res + bad_idem + bad_shift == 0, d.str()};
}

const std::vector<std::string>& chain_entry_names() {
  static const std::vector<std::string> names = {
      "C1", "C2", "C2_prime", "C_interaction", "theta_shell", "theta_prop2", "C_self", "c_prop2", "C_prop2", "K",
      "alpha_cap_mass", "alpha_cap_center", "alpha_cap_shell", "alpha_cap_remainder", "alpha", "c_large_difference",
      "c_prop3", "b_min", "quadratic_floor", "c_prime", "c_char", "K1", "c_double_prime", "c_large_asymmetry",
      "c_final"};
  return names;
}

struct AuditSummary {
  bool ledgers_ok = true;
  std::size_t densities = 0;
  std::size_t theorem_violations = 0;
  std::size_t riesz_violations = 0;
  std::size_t unconverged = 0;
  double min_ratio = INFINITY;
  double min_margin = INFINITY;  // min over rho of (D + eps) / eps
  std::string constants;
  bool ran = false;
};

AuditSummary audit(std::size_t per_dim) {
  AuditSummary s;
  s.ran = true;
  const std::vector<double> deltas = {0.05, 0.1, 0.25};
  std::ostringstream cs;
  for (int n : {2, 3}) {
    std::vector<long double> c;
    for (double delta : deltas) {
      const ConstantLedger L = constant_ledger(n, delta);
      bool complete = true;
      for (const auto& name : upstream_entry_names()) complete = complete && L.contains(name);
      for (const auto& name : chain_entry_names()) complete = complete && L.contains(name);
      for (const auto& e : L.entries()) complete = complete && !e.formula.empty() && !e.role.empty() && e.value > 0.0L;
      s.ledgers_ok = s.ledgers_ok && complete && L.value("c_final") > 0.0L;
      c.push_back(L.value("c_final"));
      char buf[64];
      std::snprintf(buf, sizeof buf, " c(%d,%.2f)=%.2Le", n, delta, L.value("c_final"));
      cs << buf;
    }
    // one corpus per N: q in {1/4, 1/2, 3/4} is admissible for every delta <= 1/4
    CorpusSpec spec;
    spec.dim = n;
    spec.seed = 1;
    spec.size = per_dim;
    spec.delta = 0.25;
    spec.grid = audit_grid(n);
    const InteractionOptions opt = audit_interaction_options(n);
    BallInteractionCache cache;
    for (std::size_t i = 0; i < per_dim; ++i) {
      const AuditRecord r = audit_item(corpus_item(spec, i), cache, opt);
      ++s.densities;
      s.riesz_violations += r.deficit < -r.quadrature_tolerance;
      s.unconverged += !r.asymmetry_converged;
      for (long double cf : c) {
        const long double rhs = cf * r.mass * r.mass * r.asymmetry * r.asymmetry;
        s.theorem_violations += static_cast<long double>(r.deficit) + r.quadrature_tolerance < rhs;
      }
      if (std::isfinite(r.ratio()) && r.deficit > r.quadrature_tolerance) s.min_ratio = std::min(s.min_ratio, r.ratio());
      s.min_margin = std::min(s.min_margin, (r.deficit + r.quadrature_tolerance) / r.quadrature_tolerance);
    }
  }
  s.constants = cs.str();
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given (--cli)"};
  const auto dir = std::filesystem::temp_directory_path() / ("riesz_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  bool same = true;
  std::size_t bytes = 0;
  for (const char* format : {"json", "csv"}) {
    std::string reports[2];
    for (int k = 0; k < 2; ++k) {
      const auto out = dir / ("verify_" + std::string(format) + std::to_string(k));
      const std::string cmd = "\"" + cli + "\" verify --dim 2 --corpus 40 --seed 7 --format " + format + " --out \"" +
                              out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) {
        std::filesystem::remove_all(dir);
        return {false, std::string("verify run failed: ") + cmd};
      }
      reports[k] = read_file(out.string());
    }
    same = same && !reports[0].empty() && reports[0] == reports[1];
    bytes += reports[0].size();
  }
  std::filesystem::remove_all(dir);
  return {same, "two verify runs per format (json, csv), seed 7, 40 densities: " +
                    std::string(same ? "byte-identical" : "DIFFERENT") + " (" + std::to_string(bytes) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  std::vector<int> known;
  std::string cli;
  std::size_t corpus = 1000;
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--known-unattainable", known, "criteria whose declared part cannot be met");
  app.add_option("--cli", cli, "path of the riesz executable");
  app.add_option("--corpus", corpus, "densities per dimension for criteria 8 and 9");
  CLI11_PARSE(app, argc, argv);

  AuditSummary summary;
  double audit_seconds = 0.0;
  auto run_audit = [&] {
    if (!summary.ran) {
      const auto t0 = std::chrono::steady_clock::now();
      summary = audit(corpus);
      audit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };

  std::vector<Criterion> criteria = {
      {1, "eigenvalues: closed form vs quadrature", 30, closed_form_vs_quadrature},
      {2, "Gamma/2 = lambda_1 across modules", 10, half_gamma_identity},
      {3, "spectral gap certification", 60, spectral_gap},
      {4, "Hessian form bound on random orthogonal profiles", 120, hessian_form},
      {5, "phi vs Monte Carlo volume oracle", 120, phi_validation},
      {6, "competitor properties", 120, competitor_criterion},
      {7, "centering", 60, centering_criterion},
      {8, "constant ledger and soundness audit", 900,
       [&] {
         run_audit();
         std::ostringstream d;
         d << "ledgers " << (summary.ledgers_ok ? "complete, c > 0" : "INCOMPLETE") << ";" << summary.constants << "; "
           << summary.densities << " densities x 3 deltas, " << summary.theorem_violations << " violations"
           << "; min D/(|rho|^2 A^2) over D > eps_quad " << fmt("%.3e", summary.min_ratio) << "; asymmetry searches unconverged "
           << summary.unconverged;
         return Outcome{summary.ledgers_ok && summary.theorem_violations == 0, d.str()};
       }},
      {9, "Riesz sanity: D >= -eps_quad", 0,
       [&] {
         run_audit();
         std::ostringstream d;
         d << summary.densities << " densities, " << summary.riesz_violations << " with D < -eps_quad; min (D + eps)/eps "
           << fmt("%.3f", summary.min_margin);
         return Outcome{summary.riesz_violations == 0, d.str()};
       }},
      {10, "determinism of verify reports", 0, [&] { return determinism(cli); }},
  };

  const std::set<int> selected(only.begin(), only.end());
  const std::set<int> declared(known.begin(), known.end());
  int blocking = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.id == 8) seconds = std::max(seconds, audit_seconds);
    const bool in_time = c.limit_seconds <= 0.0 || seconds <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    std::string status = pass ? "PASS" : "FAIL";
    if (!pass && in_time && o.unattainable_part && declared.count(c.id)) {
      status = "FAIL (declared unattainable part)";
    } else if (!pass) {
      ++blocking;
    }
    std::printf("criterion %2d %s: %s | %s | %.1f s%s\n", c.id, status.c_str(), c.title.c_str(), o.detail.c_str(),
                seconds, c.limit_seconds > 0 ? (" of " + fmt("%.0f", c.limit_seconds) + " s").c_str() : "");
    std::fflush(stdout);
  }
  return blocking == 0 ? 0 : 1;
}
