#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "windfeas/turbine.hpp"
#include "windfeas/wind_ingest.hpp"

namespace windfeas::synth {

/// Knobs for a reproducible synthetic tower record.
struct SyntheticOptions {
  int start_year = 2018;
  int days = 365;
  Seconds cadence{60};
  double height_m = 20.0;
  std::uint64_t seed = 1;
  double weibull_scale = 5.5;  // marginal of the measured speed
  double weibull_shape = 2.0;
  double persistence = 0.995;  // AR(1) coefficient of the latent process
  bool long_gaps = true;       // two multi-day holes
  double isolated_missing = 0.001;
};

/// Latent AR(1) Gaussian mapped to Weibull marginals, with a wandering direction.
ingest::WindSeries synthetic_series(const SyntheticOptions& options);

/// Constant speed and direction for `days` days from 1 Jan of `start_year`.
ingest::WindSeries constant_series(double speed_ms, int days, int start_year = 2018,
                                   Seconds cadence = Seconds{60}, double height_m = 20.0);

/// Tower-format CSV (timestamp,speed,direction,height) with missing values
/// written as `sentinel`.
void write_tower_csv(const ingest::WindSeries& series, std::ostream& out,
                     const std::string& sentinel = "-999");

/// Schema JSON matching `write_tower_csv`.
std::string tower_schema_json(const std::string& site_id, double height_m,
                              const std::string& sentinel = "-999");

/// Three MW-class turbines (no16, no73, no124) with cubic
/// ramps on a 0.5 m/s grid.
std::vector<turbine::TurbineSpec> sample_turbines();

/// Writes tower.csv, schema.json, turbines.json, ev.json and config.json
/// into `dir`; the config sends output to `dir/out`.
void write_fixture_bundle(const std::filesystem::path& dir, const ingest::WindSeries& series,
                          const std::vector<std::string>& turbine_ids = {});

}  // namespace windfeas::synth
