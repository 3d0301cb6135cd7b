#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "windfeas/series.hpp"
#include "windfeas/wind_ingest.hpp"

namespace windfeas::turbine {

struct CurvePoint {
  double speed_ms = 0.0;
  double power_kw = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

using PowerCurve = std::vector<CurvePoint>;

inline constexpr double kDefaultBinWidth = 0.5;

struct TurbineSpec {
  std::string id;
  double hub_height_m = 0.0;
  double cut_in_ms = 0.0;
  double rated_ms = 0.0;
  double cut_out_ms = 0.0;
  double nominal_kw = 0.0;
  PowerCurve curve;

  bool operator==(const TurbineSpec&) const = default;
};

/// Invariant violations of `spec`, one message each; empty when valid.
std::vector<std::string> validate(const TurbineSpec& spec);

struct RejectedEntry {
  std::size_t index = 0;  // position in the source file (0-based)
  std::string id;
  std::vector<std::string> reasons;
};

struct TurbineLibrary {
  std::vector<TurbineSpec> turbines;
  std::vector<RejectedEntry> rejected;

  const TurbineSpec* find(const std::string& id) const;
};

/// Loads a JSON array or CSV library (chosen by extension). Valid entries
/// have their curves rebinned to `bin_width`; invalid entries land in
/// `rejected` with reasons. Throws ParseError when the file itself is unreadable.
TurbineLibrary load_turbine_library(const std::filesystem::path& path,
                                    double bin_width = kDefaultBinWidth);
TurbineLibrary parse_turbine_library_json(const std::string& text, double bin_width = kDefaultBinWidth,
                                          const std::string& source = "<json>");
TurbineLibrary parse_turbine_library_csv(std::istream& in, double bin_width = kDefaultBinWidth,
                                         const std::string& source = "<csv>");

void write_turbine_library_json(const std::vector<TurbineSpec>& turbines, std::ostream& out);

/// Resamples a curve onto {first, first + w, ...}, keeping both endpoints.
PowerCurve rebin_curve(const PowerCurve& curve, double bin_width = kDefaultBinWidth);

/// Piecewise-linear evaluation, clamped to the end values outside the curve.
double interpolate(const PowerCurve& curve, double speed_ms);

/// Instantaneous output (kW) at hub-height speed `v`:
///   0 for v <= cut_in, curve value on (cut_in, rated), nominal on
///   [rated, cut_out), 0 for v >= cut_out.
double power_at(const TurbineSpec& spec, double v);

inline std::optional<double> power_at(const TurbineSpec& spec, std::optional<double> v) {
  if (!v) {
    return std::nullopt;
  }
  return power_at(spec, *v);
}

struct PowerOptions {
  /// Multiplier for the rotor-momentum excess over the static curve; the
  /// result is still capped at nominal power. 1.0 reproduces the curve.
  double momentum_uplift = 1.0;
};

struct PowerSeries {
  std::string turbine_id;
  double nominal_kw = 0.0;
  ValueSeries power;  // kW

  bool operator==(const PowerSeries&) const = default;
};

PowerSeries power_series(const TurbineSpec& spec, const ValueSeries& hub_speeds,
                         const PowerOptions& options = {});
PowerSeries power_series(const TurbineSpec& spec, const ingest::WindSeries& hub_wind,
                         const PowerOptions& options = {});

}  // namespace windfeas::turbine
