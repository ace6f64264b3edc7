#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "riesz/constants.hpp"
#include "riesz/corpus.hpp"
#include "riesz/geometry.hpp"
#include "riesz/oracles.hpp"
#include "riesz/serialize.hpp"
#include "riesz/spectral.hpp"

using nlohmann::json;
using namespace riesz;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitCertification = 3;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// A report is a JSON document; its CSV form is "# key=value" lines followed by one table.
struct Report {
  std::string name;
  json doc;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::ostringstream out;
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << "\n";
    }
    return out.str();
  }
};

struct Output {
  std::string format = "json";
  std::string out_file;
  std::string out_dir;
};

json header_doc(const std::string& report, const json& config, const json& tolerances) {
  return {{"report", report}, {"version", RIESZ_VERSION}, {"config", config}, {"tolerances", tolerances}};
}

void add_meta(Report& rep) {
  rep.meta.insert(rep.meta.begin(), {{"report", rep.name}, {"version", RIESZ_VERSION}});
  for (const auto& [k, v] : rep.doc.at("config").items()) rep.meta.emplace_back("config." + k, v.dump());
  for (const auto& [k, v] : rep.doc.at("tolerances").items()) rep.meta.emplace_back("tolerance." + k, v.dump());
}

void emit(const Report& rep, const Output& out) {
  const std::string text = out.format == "csv" ? rep.csv() : rep.doc.dump(2) + "\n";
  std::string path = out.out_file;
  if (path.empty() && !out.out_dir.empty()) {
    std::filesystem::create_directories(out.out_dir);
    path = (std::filesystem::path(out.out_dir) / (rep.name + "." + out.format)).string();
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------------------------------------

struct PhiConfig {
  int dim = 3;
  double R = 1.0;
  double Rb = 1.0;
  double delta = 0.0;  // 0: largest delta for which (R, Rb) is admissible
  int points = 512;
  int scan_points = 1000;
};

Report cmd_phi(const PhiConfig& c) {
  const double q = c.Rb / (2.0 * c.R);
  const double delta = c.delta > 0.0 ? c.delta : std::min(q, 1.0 - q);
  if (!(delta > 0.0)) throw ParameterError("phi: R~/(2R) must lie in (0, 1) for some delta > 0");
  if (c.points < 2) throw ParameterError("phi: --points must be at least 2");
  const BallPair pair = make_ball_pair(c.dim, c.R, c.Rb, delta);
  const PhiBoundCertificate cert = certify_phi_bounds(pair, c.scan_points);

  Report rep;
  rep.name = "phi";
  rep.doc = header_doc("phi", {{"dim", c.dim}, {"R", c.R}, {"Rb", c.Rb}, {"delta", delta}, {"points", c.points}},
                       {{"scan_points", c.scan_points}, {"safety_lower", cert.safety_lower},
                        {"safety_upper", cert.safety_upper}, {"monotonicity_slack", 1e-12}});
  rep.doc["pair"] = to_json(pair);
  rep.doc["certificate"] = to_json(cert);
  rep.header = {"r", "phi", "dphi"};
  json rows = json::array();
  const double end = c.R + c.Rb;
  for (int k = 0; k < c.points; ++k) {
    const double r = end * k / (c.points - 1);
    const double f = phi(pair, r);
    const double d = r > 0.0 ? phi_derivative(pair, r) : std::nan("");
    rows.push_back({{"r", r}, {"phi", f}, {"dphi", jnum(d)}});
    rep.rows.push_back({num(r), num(f), num(d)});
  }
  rep.doc["rows"] = rows;
  add_meta(rep);
  for (const auto& [k, v] : rep.doc["certificate"].items()) rep.meta.emplace_back(k, v.dump());
  return rep;
}

// ---------------------------------------------------------------------------------------------

struct SpectrumConfig {
  int dim = 3;
  double a = 0.5;
  int lmax = 200;
};

Report cmd_spectrum(const SpectrumConfig& c) {
  if (c.dim < 2) {
    throw ParameterError("spectrum: the eigenvalue analysis of the second variation is restricted to N >= 2");
  }
  const Spectrum s = gap_constant(SpectralParams{c.dim, c.a, c.lmax});
  Report rep;
  rep.name = "spectrum";
  rep.doc = header_doc("spectrum", {{"dim", c.dim}, {"a", c.a}, {"lmax", c.lmax}},
                       {{"eigenvalue_relative", 1e-10}, {"eigenvalue_floor_relative_to_lambda0", 1e-13}});
  rep.doc["spectrum"] = to_json(s);
  rep.doc["gap_below_half"] = s.gap_A < 0.5;
  rep.header = {"ell", "lambda", "multiplicity", "ratio_to_lambda1"};
  for (const auto& row : rep.doc["spectrum"]["eigenvalues"]) {
    rep.rows.push_back({row["ell"].dump(), num(row["lambda"].get<double>()), row["multiplicity"].dump(),
                        num(row["ratio_to_lambda1"].get<double>())});
  }
  add_meta(rep);
  for (const char* k : {"gap_A", "gap_argmax_ell", "cutoff_n0", "cutoff_ell", "hs_total", "hs_partial", "hs_residual"}) {
    rep.meta.emplace_back(k, rep.doc["spectrum"][k].dump());
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

struct ConstantConfig {
  int dim = 2;
  double delta = 0.1;
  bool sweep = false;
  std::vector<int> dims = {2, 3, 4};
  std::vector<double> deltas = {0.05, 0.1, 0.25};
  std::string ledger_in;
  ChainOptions chain;
};

json chain_json(const ChainOptions& o) {
  return {{"a_scan_points", o.a_scan_points}, {"phi_pair_points", o.phi_pair_points},
          {"phi_scan_points", o.phi_scan_points}, {"ell_max", o.ell_max}, {"sup_scan_points", o.sup_scan_points},
          {"safety_lower", o.safety_lower}, {"safety_upper", o.safety_upper}};
}

Report cmd_constant(const ConstantConfig& c) {
  Report rep;
  rep.name = "constant";
  if (c.sweep) {
    rep.doc = header_doc("constant", {{"mode", "sweep"}, {"dims", c.dims}, {"deltas", c.deltas}}, chain_json(c.chain));
    rep.header = {"dim", "delta", "tau", "theta_prop2", "c_prop2", "alpha", "c_prime", "c_final"};
    json rows = json::array();
    for (int n : c.dims) {
      for (double d : c.deltas) {
        const ConstantLedger L = constant_ledger(n, d, c.chain);
        json row = {{"dim", n}, {"delta", d}};
        std::vector<std::string> cells = {std::to_string(n), num(d)};
        for (std::size_t i = 2; i < rep.header.size(); ++i) {
          const long double v = L.value(rep.header[i]);
          row[rep.header[i]] = long_double_text(v);
          cells.push_back(long_double_text(v));
        }
        rows.push_back(row);
        rep.rows.push_back(cells);
      }
    }
    rep.doc["rows"] = rows;
  } else {
    ConstantLedger L(c.dim, c.delta);
    std::string source = "computed";
    if (!c.ledger_in.empty()) {
      std::ifstream f(c.ledger_in);
      if (!f) throw ParameterError("constant: cannot read " + c.ledger_in);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw ParameterError(std::string("constant: ledger input is not JSON: ") + e.what());
      }
      L = assemble(ledger_from_json(j), c.chain);
      source = c.ledger_in;
    } else {
      L = constant_ledger(c.dim, c.delta, c.chain);
    }
    rep.doc = header_doc("constant", {{"mode", "single"}, {"dim", L.dim()}, {"delta", L.delta()}, {"upstream", source}},
                         chain_json(c.chain));
    rep.doc["ledger"] = ledger_to_json(L);
    rep.doc["c_final"] = long_double_text(L.value("c_final"));
    rep.header = {"name", "value", "bound", "formula", "role"};
    for (const auto& e : L.entries()) {
      rep.rows.push_back({e.name, long_double_text(e.value), to_string(e.kind), "\"" + e.formula + "\"", "\"" + e.role + "\""});
    }
    rep.meta.emplace_back("c_final", long_double_text(L.value("c_final")));
  }
  add_meta(rep);
  return rep;
}

// ---------------------------------------------------------------------------------------------

struct VerifyConfig {
  int dim = 2;
  std::size_t corpus = 1000;
  std::uint64_t seed = 1;
  std::string rho = "corpus";
  std::vector<double> deltas = {0.05, 0.1, 0.25};
  std::vector<double> kernel_ratios = {0.25, 0.5, 0.75};
  bool oracle = false;
  std::size_t oracle_count = 10;
  std::uint64_t oracle_samples = 1u << 20;
  ChainOptions chain;
};

struct VerifyOutcome {
  Report report;
  bool ok = true;
};

VerifyOutcome cmd_verify(const VerifyConfig& c) {
  if (c.rho != "corpus" && c.rho != "ball") throw ParameterError("verify: --rho must be 'corpus' or 'ball'");
  if (c.deltas.empty()) throw ParameterError("verify: no delta given");
  const double delta_max = *std::max_element(c.deltas.begin(), c.deltas.end());

  std::vector<CorpusItem> items;
  if (c.rho == "ball") {
    const BallPair pair = make_ball_pair(c.dim, 1.0, 1.0, 0.5);
    Density ball = make_ball_density(pair, audit_grid(c.dim));
    items.push_back(CorpusItem{0, c.seed, CorpusKind::ball, "unit ball, R~ = R", std::move(ball), pair, 0.5});
  } else {
    CorpusSpec spec;
    spec.dim = c.dim;
    spec.seed = c.seed;
    spec.size = c.corpus;
    spec.kernel_ratios = c.kernel_ratios;
    spec.delta = delta_max;
    spec.grid = audit_grid(c.dim);
    items = generate_corpus(spec);
  }

  std::vector<long double> constants;
  for (double d : c.deltas) constants.push_back(constant_ledger(c.dim, d, c.chain).value("c_final"));

  const InteractionOptions iopt = audit_interaction_options(c.dim);
  BallInteractionCache cache;
  Report rep;
  rep.name = "verify";
  rep.doc = header_doc("verify",
                       {{"dim", c.dim}, {"rho", c.rho}, {"corpus", items.size()}, {"seed", c.seed}, {"deltas", c.deltas},
                        {"kernel_ratios", c.kernel_ratios}, {"oracle", c.oracle}},
                       {{"quadrature", "max(10 |I_ball - exact|, 4 |I_rho - I_rho coarse|, 1e-12 exact)"},
                        {"inner_resolution", iopt.inner_resolution},
                        {"segment_points", iopt.segment_points},
                        {"panel_fraction", iopt.panel_fraction},
                        {"gauss_points", iopt.gauss_points},
                        {"oracle_sigmas", 3.0},
                        {"constant_chain", chain_json(c.chain)}});
  rep.header = {"index", "kind", "kernel_ratio", "mass", "asymmetry", "deficit", "eps_quad", "ratio", "riesz_ok", "theorem_ok"};

  std::size_t riesz_violations = 0, theorem_violations = 0, unconverged = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double min_margin = std::numeric_limits<double>::infinity();
  json rows = json::array();
  std::vector<AuditRecord> records;
  for (const auto& item : items) {
    const AuditRecord r = audit_item(item, cache, iopt);
    records.push_back(r);
    const bool riesz_ok = r.deficit >= -r.quadrature_tolerance;
    bool theorem_ok = true;
    for (long double cf : constants) {
      const long double bound = cf * r.mass * r.mass * r.asymmetry * r.asymmetry;
      theorem_ok = theorem_ok && (static_cast<long double>(r.deficit) + r.quadrature_tolerance >= bound);
    }
    riesz_violations += !riesz_ok;
    theorem_violations += !theorem_ok;
    unconverged += !r.asymmetry_converged;
    const double ratio = r.ratio();
    if (std::isfinite(ratio) && r.deficit > r.quadrature_tolerance) min_ratio = std::min(min_ratio, ratio);
    min_margin = std::min(min_margin, (r.deficit + r.quadrature_tolerance));
    rows.push_back({{"index", r.index}, {"kind", to_string(r.kind)}, {"description", item.description},
                    {"kernel_ratio", r.kernel_ratio}, {"mass", r.mass}, {"asymmetry", r.asymmetry},
                    {"asymmetry_converged", r.asymmetry_converged}, {"deficit", r.deficit},
                    {"eps_quad", r.quadrature_tolerance}, {"ratio", jnum(ratio)}, {"riesz_ok", riesz_ok},
                    {"theorem_ok", theorem_ok}});
    rep.rows.push_back({std::to_string(r.index), to_string(r.kind), num(r.kernel_ratio), num(r.mass), num(r.asymmetry),
                        num(r.deficit), num(r.quadrature_tolerance), num(ratio), riesz_ok ? "1" : "0",
                        theorem_ok ? "1" : "0"});
  }

  json constants_json = json::array();
  for (std::size_t k = 0; k < c.deltas.size(); ++k) {
    constants_json.push_back({{"delta", c.deltas[k]}, {"c_final", long_double_text(constants[k])}});
  }
  json summary = {{"densities", items.size()},
                  {"riesz_violations", riesz_violations},
                  {"theorem_violations", theorem_violations},
                  {"asymmetry_unconverged", unconverged},
                  // densities with D inside eps_quad give no information on the ratio
                  {"min_ratio", std::isfinite(min_ratio) ? json(min_ratio) : json("not applicable (no D > eps_quad)")},
                  {"min_deficit_plus_eps", min_margin},
                  {"constants", constants_json}};

  std::size_t oracle_failures = 0;
  if (c.oracle) {
    json checks = json::array();
    const std::size_t count = std::min(c.oracle_count, items.size());
    for (std::size_t i = 0; i < count; ++i) {
      const auto& item = items[i];
      const OracleEstimate est =
          mc_interaction(item.rho, item.rho, item.pair.radius_b, c.oracle_samples, derive_seed(c.seed, 1000003 + i));
      const double diff = std::abs(est.value - records[i].rho_interaction);
      const bool ok = diff <= 3.0 * est.std_error + records[i].quadrature_tolerance;
      oracle_failures += !ok;
      checks.push_back({{"index", i}, {"quadrature", records[i].rho_interaction}, {"monte_carlo", est.value},
                        {"std_error", est.std_error}, {"ok", ok}});
    }
    summary["oracle_checks"] = checks;
    summary["oracle_failures"] = oracle_failures;
  }
  rep.doc["summary"] = summary;
  rep.doc["rows"] = rows;
  add_meta(rep);
  for (const char* k : {"densities", "riesz_violations", "theorem_violations", "asymmetry_unconverged", "min_ratio"}) {
    rep.meta.emplace_back(k, summary[k].dump());
  }
  for (const auto& cj : constants_json) {
    rep.meta.emplace_back("c_final[delta=" + num(cj["delta"].get<double>()) + "]", cj["c_final"].get<std::string>());
  }
  if (c.oracle) rep.meta.emplace_back("oracle_failures", std::to_string(oracle_failures));
  return {std::move(rep), riesz_violations == 0 && theorem_violations == 0 && oracle_failures == 0};
}

void add_chain_options(CLI::App* cmd, ChainOptions& o) {
  cmd->add_option("--a-scan", o.a_scan_points, "a-grid size for tau, Gamma and A")->check(CLI::PositiveNumber);
  cmd->add_option("--phi-pairs", o.phi_pair_points, "pairs certified for the phi bounds")->check(CLI::PositiveNumber);
  cmd->add_option("--phi-scan", o.phi_scan_points, "radial points per phi certificate")->check(CLI::Range(1000, 1 << 24));
  cmd->add_option("--sup-scan", o.sup_scan_points, "grid size for the remainder sups")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical companion for quantitative stability of the Riesz rearrangement inequality"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(RIESZ_VERSION));
  Output out;
  if (const char* env = std::getenv("RIESZ_OUT_DIR")) out.out_dir = env;
  app.add_option("--format", out.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out.out_file, "output file (default: stdout, or <out-dir>/<command>.<format>)");
  app.add_option("--out-dir", out.out_dir, "output directory (default: $RIESZ_OUT_DIR)");

  PhiConfig phi_cfg;
  auto* phi_cmd = app.add_subcommand("phi", "intersection volume phi(r), phi'(r) and the certified bounds");
  phi_cmd->add_option("--dim", phi_cfg.dim, "dimension N")->check(CLI::PositiveNumber);
  phi_cmd->add_option("--R", phi_cfg.R, "radius of E*")->check(CLI::PositiveNumber);
  phi_cmd->add_option("--Rb", phi_cfg.Rb, "radius of the kernel ball")->check(CLI::PositiveNumber);
  phi_cmd->add_option("--delta", phi_cfg.delta, "admissibility parameter (default: largest admissible)");
  phi_cmd->add_option("--points", phi_cfg.points, "rows on [0, R + Rb]");
  phi_cmd->add_option("--scan-points", phi_cfg.scan_points, "certificate scan resolution");

  SpectrumConfig sp_cfg;
  auto* sp_cmd = app.add_subcommand("spectrum", "eigenvalues, gap constant A and cutoff n0");
  sp_cmd->add_option("--dim", sp_cfg.dim, "dimension N");
  sp_cmd->add_option("--a", sp_cfg.a, "spectral parameter a = R~^2/(2R^2)");
  sp_cmd->add_option("--lmax", sp_cfg.lmax, "largest degree reported");

  ConstantConfig k_cfg;
  auto* k_cmd = app.add_subcommand("constant", "assemble the constant ledger");
  k_cmd->add_option("--dim", k_cfg.dim, "dimension N");
  k_cmd->add_option("--delta", k_cfg.delta, "admissibility parameter");
  k_cmd->add_flag("--sweep", k_cfg.sweep, "one row per (N, delta)");
  k_cmd->add_option("--dims", k_cfg.dims, "sweep dimensions");
  k_cmd->add_option("--deltas", k_cfg.deltas, "sweep deltas");
  k_cmd->add_option("--ledger-in", k_cfg.ledger_in, "upstream ledger JSON instead of recomputing it");
  add_chain_options(k_cmd, k_cfg.chain);

  VerifyConfig v_cfg;
  auto* v_cmd = app.add_subcommand("verify", "audit the inequality on a generated corpus");
  v_cmd->add_option("--dim", v_cfg.dim, "dimension N");
  v_cmd->add_option("--corpus", v_cfg.corpus, "number of densities");
  v_cmd->add_option("--seed", v_cfg.seed, "base seed");
  v_cmd->add_option("--rho", v_cfg.rho, "'corpus' or 'ball'");
  v_cmd->add_option("--deltas", v_cfg.deltas, "deltas whose constants are audited");
  v_cmd->add_option("--kernel-ratios", v_cfg.kernel_ratios, "values of R~/(2R) used by the corpus");
  v_cmd->add_flag("--oracle", v_cfg.oracle, "compare interactions with the Monte Carlo oracle");
  v_cmd->add_option("--oracle-count", v_cfg.oracle_count, "densities checked by the oracle");
  v_cmd->add_option("--oracle-samples", v_cfg.oracle_samples, "Monte Carlo samples per check");
  add_chain_options(v_cmd, v_cfg.chain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*phi_cmd) emit(cmd_phi(phi_cfg), out);
    if (*sp_cmd) emit(cmd_spectrum(sp_cfg), out);
    if (*k_cmd) emit(cmd_constant(k_cfg), out);
    if (*v_cmd) {
      const VerifyOutcome res = cmd_verify(v_cfg);
      emit(res.report, out);
      if (!res.ok) {
        std::cerr << "riesz: verification failed\n";
        return kExitCertification;
      }
    }
  } catch (const ParameterError& e) {
    std::cerr << "riesz: invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "riesz: invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const CertificationError& e) {
    std::cerr << "riesz: certification failed: " << e.what() << "\n";
    return kExitCertification;
  } catch (const ConsistencyError& e) {
    std::cerr << "riesz: certification failed: " << e.what() << "\n";
    return kExitCertification;
  } catch (const std::exception& e) {
    std::cerr << "riesz: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
