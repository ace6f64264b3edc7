#pragma once

#include <string>

#include <json.hpp>

#include "riesz/constants.hpp"
#include "riesz/density.hpp"
#include "riesz/geometry.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

inline constexpr int kDensityFormatVersion = 1;
inline constexpr int kLedgerFormatVersion = 1;

/// Self-describing container: dim, origin, direction table, per-ray breakpoints and values, mass.
/// The pointwise profile is not stored; a loaded density carries none.
nlohmann::json density_to_json(const Density& rho);
/// Throws ParameterError on a missing or unsupported format_version and on malformed fields.
Density density_from_json(const nlohmann::json& j);

/// Values are written both as numbers and as 21-digit strings (the string is read back).
nlohmann::json ledger_to_json(const ConstantLedger& ledger);
ConstantLedger ledger_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BallPair& pair);
nlohmann::json to_json(const PhiBoundCertificate& cert);
nlohmann::json to_json(const Spectrum& spectrum);

/// Shortest decimal that reads back to the same long double.
std::string long_double_text(long double x);
long double parse_long_double(const std::string& text);

}  // namespace riesz
