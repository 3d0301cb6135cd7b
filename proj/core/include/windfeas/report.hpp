#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "windfeas/ev_model.hpp"
#include "windfeas/stability.hpp"
#include "windfeas/stats.hpp"
#include "windfeas/turbine.hpp"
#include "windfeas/wind_ingest.hpp"

namespace windfeas::report {

struct DatasetSpec {
  std::string name;
  std::filesystem::path path;
  ingest::TowerSchema schema;
};

struct ImputationParams {
  std::size_t max_run = ingest::kDefaultMaxImputedRun;
  /// Missing runs at least this long become gaps; unset means any run
  /// longer than `max_run`.
  std::optional<Seconds> min_gap;
};

struct RunConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<int> intervals_min{1, 2, 3};
  double shear_alpha = 0.143;
  std::filesystem::path turbine_library;
  std::vector<std::string> turbine_ids;  // empty selects the whole library
  ev::ChargingProfile ev_profile = ev::reference_fast_charge_profile();
  /// Window parameters; t_charge defaults to the EV profile's charge time.
  stability::WindowParams window;
  ImputationParams imputation;
  double momentum_uplift = 1.0;
  std::size_t windrose_sectors = 16;
  bool write_normalized_series = true;
  std::filesystem::path output_dir = "windfeas_out";
  unsigned threads = 1;
};

/// Reads the JSON run configuration. Relative paths resolve against the
/// directory holding the config file.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(const std::string& text, const std::filesystem::path& base_dir);

/// Throws ConfigError when the configuration cannot be run.
void validate(const RunConfig& config);

struct DatasetStats {
  std::optional<stats::SummaryStats> summary;  // unset when nothing was observed
  std::optional<stats::WeibullFit> weibull;
  std::string weibull_error;
  stats::WindroseTable windrose;
};

DatasetStats compute_stats(const ingest::WindSeries& series, std::size_t windrose_sectors = 16);

/// Candidate windows of one (turbine, interval) cell, pooled over all days.
struct StabilityCell {
  std::string dataset;
  int interval_min = 0;
  std::string turbine_id;
  std::size_t n_candidates = 0;
  std::size_t n_complete = 0;
  std::size_t n_stable = 0;

  double pct_of_candidates() const;
  double pct_of_complete() const;
};

struct DayRecord {
  std::string turbine_id;
  stability::DailyResult result;  // candidates are dropped once emitted
  bool excluded = false;          // the day touches a declared gap
};

struct MonthlyAggregate {
  std::string turbine_id;
  YearMonth month;
  std::size_t days_analyzed = 0;
  std::vector<Date> days_excluded;
  double energy_kwh = 0.0;
  long long ev_count = 0;
};

struct IntervalSection {
  std::string dataset;
  int interval_min = 0;
  std::filesystem::path directory;
  std::size_t n_samples = 0;
  std::size_t n_missing = 0;
  DatasetStats stats;
  std::vector<StabilityCell> stability;  // turbine order of the config
  std::vector<DayRecord> days;           // by turbine, then date
  std::vector<MonthlyAggregate> monthly;
};

struct DatasetSection {
  std::string name;
  std::string site_id;
  Seconds cadence{0};
  std::size_t n_samples = 0;
  std::size_t n_missing_raw = 0;
  std::vector<ingest::GapRange> gaps;
  std::map<YearMonth, double> missing_by_month;
};

struct Failure {
  std::string context;  // "dataset=M2 interval=3 turbine=no16"
  std::string message;
};

struct FeasibilityReport {
  std::vector<DatasetSection> datasets;
  std::vector<IntervalSection> sections;
  std::vector<Failure> failures;
  std::vector<std::string> warnings;
};

/// Full pipeline: ingest, impute, gap detection, averaging, shear, power,
/// daily stability analysis, statistics and aggregation. Writes one
/// directory per (dataset, interval) under `config.output_dir`. Errors in
/// one cell are recorded in `failures` and the remaining cells still run.
FeasibilityReport run(const RunConfig& config);

/// Monthly sums over the non-excluded days of `days` (single turbine).
std::vector<MonthlyAggregate> aggregate_monthly(const std::vector<DayRecord>& days);

/// One heat-map row: the candidate mean per slot, missing where the slot
/// has no complete candidate.
std::vector<std::optional<double>> heatmap_row(const std::vector<stability::CandidateWindow>& candidates,
                                               std::size_t n_slots);

struct HeatmapRow {
  std::vector<std::string> keys;  // leading label columns
  std::vector<std::optional<double>> cells;
};

/// CSV with header `<key columns>,m<start minute>...`; missing cells are NA.
void emit_heatmap_matrix(std::ostream& out, const std::vector<std::string>& key_columns,
                         const std::vector<HeatmapRow>& rows, std::size_t n_slots,
                         Seconds slot_stride);

/// Report-level JSON for the `stats` subcommand.
std::string stats_json(const ingest::WindSeries& raw, const ingest::WindSeries& averaged,
                       const DatasetStats& stats);

}  // namespace windfeas::report
