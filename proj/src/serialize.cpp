#include "riesz/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace riesz {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ParameterError(std::string(where) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string(where) + ": bad field '" + key + "': " + e.what());
  }
}

void check_version(const json& j, int expected, const char* where) {
  const int v = field<int>(j, "format_version", where);
  if (v != expected) throw ParameterError(std::string(where) + ": unsupported format_version " + std::to_string(v));
}

}  // namespace

std::string long_double_text(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

long double parse_long_double(const std::string& text) {
  char* end = nullptr;
  const long double v = std::strtold(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw ParameterError("not a number: '" + text + "'");
  return v;
}

json density_to_json(const Density& rho) {
  json rays = json::array();
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const auto e = rho.edges(i);
    const auto v = rho.values(i);
    rays.push_back({{"edges", std::vector<double>(e.begin(), e.end())}, {"values", std::vector<double>(v.begin(), v.end())}});
  }
  json j = {{"format_version", kDensityFormatVersion},
            {"dim", rho.dim()},
            {"origin", rho.origin()},
            {"directions", {{"points", rho.directions().points()}, {"weights", rho.directions().weights()}}},
            {"rays", std::move(rays)},
            {"mass", rho.mass()}};
  if (rho.profile()) j["profile"] = rho.profile()->describe();
  return j;
}

Density density_from_json(const json& j) {
  constexpr const char* where = "density";
  check_version(j, kDensityFormatVersion, where);
  const int dim = field<int>(j, "dim", where);
  const json& dirs = j.at("directions");
  DirectionSet set(dim, field<std::vector<double>>(dirs, "points", where), field<std::vector<double>>(dirs, "weights", where));
  std::vector<RayProfile> rays;
  for (const auto& r : field<json>(j, "rays", where)) {
    rays.push_back(RayProfile{field<std::vector<double>>(r, "edges", where), field<std::vector<double>>(r, "values", where)});
  }
  if (rays.size() != set.size()) throw ParameterError("density: ray count differs from the direction count");
  Density rho(std::move(set), std::move(rays), field<std::vector<double>>(j, "origin", where));
  if (j.contains("mass")) {
    const double stored = j.at("mass").get<double>();
    if (std::abs(stored - rho.mass()) > 1e-10 * std::max(1.0, std::abs(stored))) {
      throw ParameterError("density: stored mass disagrees with the rays");
    }
  }
  return rho;
}

json ledger_to_json(const ConstantLedger& ledger) {
  json entries = json::array();
  for (const auto& e : ledger.entries()) {
    entries.push_back({{"name", e.name},
                       {"value", static_cast<double>(e.value)},
                       {"value_text", long_double_text(e.value)},
                       {"bound", to_string(e.kind)},
                       {"formula", e.formula},
                       {"role", e.role}});
  }
  return {{"format_version", kLedgerFormatVersion}, {"dim", ledger.dim()}, {"delta", ledger.delta()}, {"entries", entries}};
}

ConstantLedger ledger_from_json(const json& j) {
  constexpr const char* where = "ledger";
  check_version(j, kLedgerFormatVersion, where);
  ConstantLedger ledger(field<int>(j, "dim", where), field<double>(j, "delta", where));
  for (const auto& e : field<json>(j, "entries", where)) {
    LedgerEntry entry;
    entry.name = field<std::string>(e, "name", where);
    entry.value = e.contains("value_text") ? parse_long_double(e.at("value_text").get<std::string>())
                                           : static_cast<long double>(field<double>(e, "value", where));
    const std::string bound = e.value("bound", "exact");
    entry.kind = bound == "lower" ? BoundKind::lower : bound == "upper" ? BoundKind::upper : BoundKind::exact;
    entry.formula = e.value("formula", "");
    entry.role = e.value("role", "");
    ledger.set(std::move(entry));
  }
  return ledger;
}

json to_json(const BallPair& pair) {
  return {{"dim", pair.dim}, {"R", pair.radius_e}, {"Rb", pair.radius_b}, {"delta", pair.delta}, {"a", pair.spectral_a()}};
}

json to_json(const PhiBoundCertificate& cert) {
  return {{"c_lower", cert.c_lower},         {"c_taylor", cert.c_taylor},         {"gamma", cert.gamma},
          {"scan_points", cert.scan_points}, {"scan_resolution", cert.scan_resolution},
          {"safety_lower", cert.safety_lower}, {"safety_upper", cert.safety_upper}};
}

json to_json(const Spectrum& s) {
  json rows = json::array();
  const double l1 = s.lambdas.size() > 1 ? s.lambdas[1] : 0.0;
  for (std::size_t ell = 0; ell < s.lambdas.size(); ++ell) {
    rows.push_back({{"ell", ell},
                    {"lambda", s.lambdas[ell]},
                    {"multiplicity", s.multiplicities[ell]},
                    {"ratio_to_lambda1", l1 != 0.0 ? s.lambdas[ell] / l1 : 0.0}});
  }
  return {{"dim", s.params.dim},
          {"a", s.params.a},
          {"ell_max", s.params.ell_max},
          {"gap_A", s.gap_A},
          {"gap_argmax_ell", s.gap_argmax_ell},
          {"cutoff_n0", s.cutoff_n0},
          {"cutoff_ell", s.cutoff_ell},
          {"enumerated_ell", s.enumerated_ell},
          {"hs_total", s.hs_total},
          {"hs_partial", s.hs_partial},
          {"hs_residual", s.hs_residual},
          {"rank_bound_slack", s.rank_bound_slack},
          {"eigenvalues", rows}};
}

}  // namespace riesz
