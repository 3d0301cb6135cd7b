#include "windfeas/turbine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "windfeas/csv.hpp"
#include "windfeas/error.hpp"

namespace windfeas::turbine {

using nlohmann::json;

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const TurbineSpec& spec) {
  std::vector<std::string> problems;
  if (spec.id.empty()) {
    problems.emplace_back("id is empty");
  }
  if (!(spec.hub_height_m > 0.0)) {
    problems.push_back("hub_height_m must be positive (got " + num(spec.hub_height_m) + ")");
  }
  if (!(spec.cut_in_ms > 0.0)) {
    problems.push_back("cut_in must be positive (got " + num(spec.cut_in_ms) + ")");
  }
  if (!(spec.cut_in_ms < spec.rated_ms)) {
    problems.push_back("cut_in (" + num(spec.cut_in_ms) + ") must be below rated (" +
                       num(spec.rated_ms) + ")");
  }
  if (!(spec.rated_ms < spec.cut_out_ms)) {
    problems.push_back("rated (" + num(spec.rated_ms) + ") must be below cut_out (" +
                       num(spec.cut_out_ms) + ")");
  }
  if (!(spec.nominal_kw > 0.0)) {
    problems.push_back("nominal_kw must be positive (got " + num(spec.nominal_kw) + ")");
  }
  if (spec.curve.size() < 2) {
    problems.emplace_back("power curve needs at least 2 points");
  }
  const double tol = 1e-9 * std::max(1.0, spec.nominal_kw);
  for (std::size_t i = 0; i < spec.curve.size(); ++i) {
    const auto& p = spec.curve[i];
    if (!std::isfinite(p.speed_ms) || !std::isfinite(p.power_kw)) {
      problems.push_back("curve point " + std::to_string(i) + " is not finite");
      continue;
    }
    if (i > 0 && !(p.speed_ms > spec.curve[i - 1].speed_ms)) {
      problems.push_back("curve speeds must be strictly increasing (point " + std::to_string(i) +
                         " at " + num(p.speed_ms) + " m/s)");
    }
    if (p.power_kw < -tol || p.power_kw > spec.nominal_kw + tol) {
      problems.push_back("curve power " + num(p.power_kw) + " kW at " + num(p.speed_ms) +
                         " m/s outside [0, nominal]");
    }
    if (p.speed_ms >= spec.rated_ms && p.speed_ms < spec.cut_out_ms &&
        std::abs(p.power_kw - spec.nominal_kw) > tol) {
      problems.push_back("curve power at " + num(p.speed_ms) + " m/s (>= rated) is " +
                         num(p.power_kw) + " kW, expected nominal " + num(spec.nominal_kw));
    }
  }
  return problems;
}

const TurbineSpec* TurbineLibrary::find(const std::string& id) const {
  const auto it = std::find_if(turbines.begin(), turbines.end(),
                               [&](const TurbineSpec& t) { return t.id == id; });
  return it == turbines.end() ? nullptr : &*it;
}

// ---------------------------------------------------------------------------
// Curve handling

PowerCurve rebin_curve(const PowerCurve& curve, double bin_width) {
  if (curve.size() < 2) {
    throw DomainError("power curve needs at least 2 points to rebin");
  }
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw DomainError("bin width must be positive");
  }
  const double first = curve.front().speed_ms;
  const double last = curve.back().speed_ms;
  const double eps = 1e-9 * std::max(1.0, bin_width);
  PowerCurve out;
  out.push_back(curve.front());
  for (long long k = 1;; ++k) {
    const double v = first + static_cast<double>(k) * bin_width;
    if (v >= last - eps) {
      break;
    }
    out.push_back(CurvePoint{v, interpolate(curve, v)});
  }
  out.push_back(curve.back());
  return out;
}

double interpolate(const PowerCurve& curve, double speed_ms) {
  if (curve.empty()) {
    return 0.0;
  }
  if (speed_ms <= curve.front().speed_ms) {
    return curve.front().power_kw;
  }
  if (speed_ms >= curve.back().speed_ms) {
    return curve.back().power_kw;
  }
  const auto hi = std::upper_bound(curve.begin(), curve.end(), speed_ms,
                                   [](double v, const CurvePoint& p) { return v < p.speed_ms; });
  const auto lo = std::prev(hi);
  if (lo->speed_ms == speed_ms) {
    return lo->power_kw;
  }
  const double f = (speed_ms - lo->speed_ms) / (hi->speed_ms - lo->speed_ms);
  return lo->power_kw + f * (hi->power_kw - lo->power_kw);
}

double power_at(const TurbineSpec& spec, double v) {
  if (v <= spec.cut_in_ms || v >= spec.cut_out_ms) {
    return 0.0;
  }
  if (v >= spec.rated_ms) {
    return spec.nominal_kw;
  }
  return std::clamp(interpolate(spec.curve, v), 0.0, spec.nominal_kw);
}

PowerSeries power_series(const TurbineSpec& spec, const ValueSeries& hub_speeds,
                         const PowerOptions& options) {
  if (!(options.momentum_uplift > 0.0)) {
    throw DomainError("momentum uplift factor must be positive");
  }
  PowerSeries out;
  out.turbine_id = spec.id;
  out.nominal_kw = spec.nominal_kw;
  out.power.start = hub_speeds.start;
  out.power.cadence = hub_speeds.cadence;
  out.power.utc_offset = hub_speeds.utc_offset;
  out.power.values.reserve(hub_speeds.size());
  for (const auto& v : hub_speeds.values) {
    auto p = power_at(spec, v);
    if (p && options.momentum_uplift != 1.0) {
      *p = std::min(*p * options.momentum_uplift, spec.nominal_kw);
    }
    out.power.values.push_back(p);
  }
  return out;
}

PowerSeries power_series(const TurbineSpec& spec, const ingest::WindSeries& hub_wind,
                         const PowerOptions& options) {
  return power_series(spec, hub_wind.speeds(), options);
}

// ---------------------------------------------------------------------------
// Library I/O

namespace {

void accept_or_reject(TurbineSpec spec, std::size_t index, std::vector<std::string> reasons,
                      double bin_width, TurbineLibrary& lib) {
  if (reasons.empty()) {
    reasons = validate(spec);
  }
  if (reasons.empty()) {
    spec.curve = rebin_curve(spec.curve, bin_width);
    lib.turbines.push_back(std::move(spec));
  } else {
    lib.rejected.push_back(RejectedEntry{index, spec.id, std::move(reasons)});
  }
}

}  // namespace

TurbineLibrary parse_turbine_library_json(const std::string& text, double bin_width,
                                          const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("invalid turbine library JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("turbines")) {
    doc = doc.at("turbines");
  }
  if (!doc.is_array()) {
    throw ParseError(source, 0, "turbine library must be a JSON array of turbine objects");
  }
  static constexpr const char* kRequired[] = {"id",         "hub_height_m", "cut_in_ms", "rated_ms",
                                              "cut_out_ms", "nominal_kw",   "curve"};
  TurbineLibrary lib;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    TurbineSpec spec;
    std::vector<std::string> reasons;
    if (!e.is_object()) {
      lib.rejected.push_back(RejectedEntry{i, "", {"entry is not an object"}});
      continue;
    }
    if (e.contains("id") && e.at("id").is_string()) {
      spec.id = e.at("id").get<std::string>();
    } else if (e.contains("id") && e.at("id").is_number()) {
      spec.id = e.at("id").dump();
    }
    for (const char* field : kRequired) {
      if (!e.contains(field) || e.at(field).is_null()) {
        reasons.push_back(std::string("missing required field '") + field + "'");
      }
    }
    if (!reasons.empty()) {
      lib.rejected.push_back(RejectedEntry{i, spec.id, std::move(reasons)});
      continue;
    }
    try {
      spec.hub_height_m = e.at("hub_height_m").get<double>();
      spec.cut_in_ms = e.at("cut_in_ms").get<double>();
      spec.rated_ms = e.at("rated_ms").get<double>();
      spec.cut_out_ms = e.at("cut_out_ms").get<double>();
      spec.nominal_kw = e.at("nominal_kw").get<double>();
      for (const auto& p : e.at("curve")) {
        if (!p.is_array() || p.size() != 2) {
          throw ConfigError("curve points must be [speed, kw] pairs");
        }
        spec.curve.push_back(CurvePoint{p[0].get<double>(), p[1].get<double>()});
      }
    } catch (const json::exception& ex) {
      reasons.push_back(std::string("wrong field type: ") + ex.what());
    } catch (const ConfigError& ex) {
      reasons.emplace_back(ex.what());
    }
    accept_or_reject(std::move(spec), i, std::move(reasons), bin_width, lib);
  }
  return lib;
}

TurbineLibrary parse_turbine_library_csv(std::istream& in, double bin_width,
                                         const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(source, 1, "malformed header: empty turbine library");
  }
  const auto header = csv::split_record(line, ',');
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (csv::trim(header[i]) == name) {
        return i;
      }
    }
    throw ParseError(source, 1, "malformed header: column '" + name + "' not found");
  };
  const std::size_t c_id = col("id");
  const std::size_t c_hub = col("hub_height_m");
  const std::size_t c_in = col("cut_in_ms");
  const std::size_t c_rated = col("rated_ms");
  const std::size_t c_out = col("cut_out_ms");
  const std::size_t c_kw = col("nominal_kw");
  const std::size_t c_curve = col("curve");

  TurbineLibrary lib;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) {
      continue;
    }
    const auto f = csv::split_record(line, ',');
    TurbineSpec spec;
    std::vector<std::string> reasons;
    auto get = [&](std::size_t c, const char* name) -> std::optional<double> {
      if (c >= f.size() || csv::trim(f[c]).empty()) {
        reasons.push_back(std::string("missing required field '") + name + "'");
        return std::nullopt;
      }
      auto v = csv::parse_double(f[c]);
      if (!v) {
        reasons.push_back(std::string("field '") + name + "' is not a number");
      }
      return v;
    };
    spec.id = c_id < f.size() ? std::string(csv::trim(f[c_id])) : std::string();
    if (spec.id.empty()) {
      reasons.emplace_back("missing required field 'id'");
    }
    spec.hub_height_m = get(c_hub, "hub_height_m").value_or(0.0);
    spec.cut_in_ms = get(c_in, "cut_in_ms").value_or(0.0);
    spec.rated_ms = get(c_rated, "rated_ms").value_or(0.0);
    spec.cut_out_ms = get(c_out, "cut_out_ms").value_or(0.0);
    spec.nominal_kw = get(c_kw, "nominal_kw").value_or(0.0);
    if (c_curve >= f.size() || csv::trim(f[c_curve]).empty()) {
      reasons.emplace_back("missing required field 'curve'");
    } else {
      std::istringstream pts{std::string(f[c_curve])};
      std::string tok;
      while (pts >> tok) {
        const auto colon = tok.find(':');
        const auto v = colon == std::string::npos ? std::nullopt : csv::parse_double(tok.substr(0, colon));
        const auto p = colon == std::string::npos ? std::nullopt : csv::parse_double(tok.substr(colon + 1));
        if (!v || !p) {
          reasons.push_back("bad curve point '" + tok + "' (expected speed:kw)");
          break;
        }
        spec.curve.push_back(CurvePoint{*v, *p});
      }
    }
    accept_or_reject(std::move(spec), index, std::move(reasons), bin_width, lib);
    ++index;
  }
  return lib;
}

TurbineLibrary load_turbine_library(const std::filesystem::path& path, double bin_width) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "turbine library not found or unreadable");
  }
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") {
    return parse_turbine_library_csv(in, bin_width, path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_turbine_library_json(buf.str(), bin_width, path.string());
}

void write_turbine_library_json(const std::vector<TurbineSpec>& turbines, std::ostream& out) {
  json arr = json::array();
  for (const auto& t : turbines) {
    json curve = json::array();
    for (const auto& p : t.curve) {
      curve.push_back({p.speed_ms, p.power_kw});
    }
    arr.push_back({{"id", t.id},
                   {"hub_height_m", t.hub_height_m},
                   {"cut_in_ms", t.cut_in_ms},
                   {"rated_ms", t.rated_ms},
                   {"cut_out_ms", t.cut_out_ms},
                   {"nominal_kw", t.nominal_kw},
                   {"curve", std::move(curve)}});
  }
  out << arr.dump(2) << '\n';
}

}  // namespace windfeas::turbine
