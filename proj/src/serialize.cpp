#include "rauzy/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace rauzy {

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string profile_csv(const NoiseProfile& profile) {
  std::ostringstream out;
  out << "ell,N,mismatches,scored,beta\n";
  for (const auto& e : profile.entries) {
    out << e.ell << ',' << e.prefix_len << ',' << e.ratio.mismatches << ',' << e.ratio.scored << ','
        << format_fixed(e.ratio.value()) << '\n';
  }
  return out.str();
}

nlohmann::json profile_json(const NoiseProfile& profile, const nlohmann::json& source) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "noise_profile";
  doc["base"] = profile.base;
  doc["orientation"] = to_string(profile.orientation);
  doc["ell_max"] = profile.ell_max;
  doc["tail_fraction"] = profile.tail_fraction;
  doc["grid"] = profile.grid;
  doc["tail_window"] = std::vector<std::size_t>(profile.grid.begin() + static_cast<std::ptrdiff_t>(profile.tail_begin()),
                                                profile.grid.end());
  auto& est = doc["estimates"] = nlohmann::json::array();
  for (const auto& e : profile.estimates) est.push_back({{"ell", e.ell}, {"loe", e.loe}, {"upe", e.upe}});
  doc["loe"] = profile.loe;
  doc["upe"] = profile.upe;
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (const auto& e : profile.entries) {
    entries.push_back({{"ell", e.ell},
                       {"N", e.prefix_len},
                       {"mismatches", e.ratio.mismatches},
                       {"scored", e.ratio.scored},
                       {"beta", e.ratio.value()}});
  }
  doc["source"] = source;
  return doc;
}

nlohmann::json to_json(const MarkovSpec& spec) {
  const std::size_t n = spec.states();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(std::vector<double>(spec.P.begin() + static_cast<std::ptrdiff_t>(i * n),
                                       spec.P.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "markov_spec"}, {"base", spec.base},
          {"order", spec.order},             {"rho", spec.rho},        {"P", rows}};
}

MarkovSpec markov_spec_from_json(const nlohmann::json& doc) {
  try {
    const auto base = doc.at("base").get<unsigned>();
    const auto order = doc.at("order").get<unsigned>();
    auto rho = doc.at("rho").get<std::vector<double>>();
    std::vector<double> P;
    for (const auto& row : doc.at("P")) {
      const auto r = row.get<std::vector<double>>();
      if (r.size() != rho.size()) throw ParseError("markov spec: ragged P row");
      P.insert(P.end(), r.begin(), r.end());
    }
    return make_markov_spec(base, order, std::move(rho), std::move(P));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("markov spec: ") + e.what());
  }
}

std::string bounds_csv(const std::vector<DimBounds>& rows) {
  std::ostringstream out;
  out << "s,lower,upper,A1,A2,A4,L\n";
  for (const auto& r : rows) {
    out << format_fixed(r.s) << ',' << format_fixed(r.lower) << ',' << format_fixed(r.upper) << ','
        << format_fixed(r.a1) << ',' << format_fixed(r.a2) << ',' << format_fixed(r.a4) << ','
        << format_fixed(r.l) << '\n';
  }
  return out.str();
}

nlohmann::json bounds_json(unsigned base, const std::vector<DimBounds>& rows) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "dimension_bounds";
  doc["base"] = base;
  auto& series = doc["series"];
  for (const auto& r : rows) {
    series["s"].push_back(r.s);
    series["lower"].push_back(r.lower);
    series["upper"].push_back(r.upper);
    series["upper_raw"].push_back(r.upper_raw);
    series["A1"].push_back(r.a1);
    series["A2"].push_back(r.a2);
    series["A4"].push_back(r.a4);
    series["L"].push_back(r.l);
  }
  doc["labels"] = {{"lower", "dim A3(s), U(s) lower bound"}, {"upper", "dim A3(s), U(s) upper bound"}};
  return doc;
}

std::string bounds_svg(unsigned base, const std::vector<DimBounds>& rows) {
  constexpr double kW = 480, kH = 320, kPad = 40;
  const double smax = rows.empty() ? 1.0 : rows.back().s;
  auto px = [&](double s) { return kPad + (kW - 2 * kPad) * (smax > 0 ? s / smax : 0); };
  auto py = [&](double v) { return kH - kPad - (kH - 2 * kPad) * v; };
  auto polyline = [&](auto field, const char* colour) {
    std::ostringstream pts;
    for (const auto& r : rows) pts << format_fixed(px(r.s)) << ',' << format_fixed(py(field(r))) << ' ';
    return std::string("<polyline fill=\"none\" stroke=\"") + colour + "\" points=\"" + pts.str() + "\"/>\n";
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n"
      << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad << "\" height=\""
      << kH - 2 * kPad << "\" fill=\"none\" stroke=\"#888\"/>\n"
      << polyline([](const DimBounds& r) { return r.lower; }, "#1f77b4")
      << polyline([](const DimBounds& r) { return r.upper; }, "#d62728")
      << "<text x=\"" << kPad << "\" y=\"" << kPad / 2 << "\" font-size=\"12\">base " << base
      << ": lower (blue) and upper (red) dimension bounds</text>\n"
      << "</svg>\n";
  return out.str();
}

nlohmann::json to_json(const CodecParams& params) {
  return {{"base", params.base}, {"k", params.k},
          {"ell", params.ell},   {"p", params.p},
          {"w", params.w},       {"cycle_len", params.cycle_len()},
          {"block_len", params.block_len()}};
}

}  // namespace rauzy
