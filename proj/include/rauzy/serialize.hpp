#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rauzy/codec.hpp"
#include "rauzy/measures.hpp"
#include "rauzy/predictor.hpp"

namespace rauzy {

inline constexpr int kSchemaVersion = 1;

/// Fixed 12-decimal rendering used in every CSV column.
std::string format_fixed(double v);

/// Header `ell,N,mismatches,scored,beta`, one row per profile entry.
std::string profile_csv(const NoiseProfile& profile);
/// Profile document; `source` carries caller metadata (seed, generator id, ...).
nlohmann::json profile_json(const NoiseProfile& profile, const nlohmann::json& source);

nlohmann::json to_json(const MarkovSpec& spec);
/// Parses and validates {base, order, rho, P}.
MarkovSpec markov_spec_from_json(const nlohmann::json& doc);

/// Header `s,lower,upper,A1,A2,A4,L`.
std::string bounds_csv(const std::vector<DimBounds>& rows);
nlohmann::json bounds_json(unsigned base, const std::vector<DimBounds>& rows);
/// Minimal SVG line chart of the lower and upper curves.
std::string bounds_svg(unsigned base, const std::vector<DimBounds>& rows);

nlohmann::json to_json(const CodecParams& params);

}  // namespace rauzy
