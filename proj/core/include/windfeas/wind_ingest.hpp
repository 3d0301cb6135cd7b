#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "windfeas/series.hpp"
#include "windfeas/time.hpp"

namespace windfeas::ingest {

struct WindSample {
  Timestamp time{};
  std::optional<double> speed;      // m/s, >= 0
  std::optional<double> direction;  // degrees in [0, 360)
  double height_m = 0.0;

  bool operator==(const WindSample&) const = default;
};

/// Long-missing stretch [start, end).
struct GapRange {
  Timestamp start{};
  Timestamp end{};

  Seconds duration() const { return end - start; }
  bool contains(Timestamp t) const { return t >= start && t < end; }
  bool intersects(Timestamp lo, Timestamp hi) const { return start < hi && lo < end; }

  bool operator==(const GapRange&) const = default;
};

/// Immutable regular-cadence wind record.
///
/// Construction checks: timestamps advance by exactly `cadence`, speeds are
/// missing or >= 0, directions lie in [0, 360), gaps are sorted and disjoint,
/// and every sample inside a gap has a missing speed.
class WindSeries {
public:
  WindSeries(std::string site_id, Seconds cadence, std::vector<WindSample> samples,
             std::vector<GapRange> gaps = {}, Seconds utc_offset = Seconds{0});

  const std::string& site_id() const noexcept { return site_id_; }
  Seconds cadence() const noexcept { return cadence_; }
  Seconds utc_offset() const noexcept { return utc_offset_; }
  const std::vector<WindSample>& samples() const noexcept { return samples_; }
  const std::vector<GapRange>& gaps() const noexcept { return gaps_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  std::size_t missing_count() const;
  bool in_gap(Timestamp t) const;

  WindSeries with_gaps(std::vector<GapRange> gaps) const;
  WindSeries with_speeds(const std::vector<std::optional<double>>& speeds) const;

  /// Speed channel as a plain value series.
  ValueSeries speeds() const;

  bool operator==(const WindSeries&) const = default;

private:
  std::string site_id_;
  Seconds cadence_;
  std::vector<WindSample> samples_;
  std::vector<GapRange> gaps_;
  Seconds utc_offset_;
};

/// Column mapping for a delimiter-separated tower file.
struct TowerSchema {
  std::string site_id = "site";
  char delimiter = ',';
  std::size_t skip_lines = 0;  // preamble lines before the header row
  /// Joined with a single space before parsing with `timestamp_format`.
  std::vector<std::string> timestamp_columns{"timestamp"};
  std::string timestamp_format = "%Y-%m-%dT%H:%M:%SZ";
  /// Local zone of the site. Applied to file timestamps unless
  /// `timestamps_utc` is set, and always to day boundaries.
  Seconds utc_offset{0};
  bool timestamps_utc = false;
  std::string speed_column = "speed";
  std::optional<std::string> direction_column;
  std::optional<std::string> height_column;
  std::optional<double> height_m;
  std::vector<std::string> sentinels;
  std::optional<Seconds> cadence;
  std::optional<std::string> missing_flag_column;
};

TowerSchema load_schema(const std::filesystem::path& path);
TowerSchema schema_from_json(const std::string& json_text);

/// Schema of the normalized columnar CSV written by `write_series_csv`.
TowerSchema normalized_schema(std::string site_id, Seconds utc_offset = Seconds{0});

WindSeries parse_tower_file(const std::filesystem::path& path, const TowerSchema& schema);
WindSeries parse_tower_stream(std::istream& in, const TowerSchema& schema,
                              const std::string& source_name = "<stream>");

inline constexpr std::size_t kDefaultMaxImputedRun = 5;

/// Fills missing runs of at most `max_run` samples with the mean of the
/// available neighbours at offsets -2, -1, +1, +2. Runs are filled toward
/// the interior from their anchored side (left to right unless the run
/// touches the head of the series), so earlier fills feed later ones.
/// Longer runs stay missing and are merged into the series gaps.
WindSeries impute_short_gaps(const WindSeries& series, std::size_t max_run = kDefaultMaxImputedRun);

/// Maximal missing runs lasting at least `min_gap`.
std::vector<GapRange> detect_long_gaps(const WindSeries& series, Seconds min_gap);

/// Block average over windows of length `interval` aligned to local midnight.
/// A window with any missing or absent sample, or touching a gap, is missing.
/// Direction uses the circular mean. No gust factor is applied.
WindSeries resample_average(const WindSeries& series, Seconds interval);

/// Missing share of each local calendar month touched by the series. The
/// denominator is the full month at the series cadence, so time outside the
/// recorded span counts as missing.
std::map<YearMonth, double> missing_fraction_by_month(const WindSeries& series);

/// Missing share over the recorded span.
double missing_fraction(const WindSeries& series);

/// Columnar CSV: timestamp,speed,direction,height_m,missing
void write_series_csv(const WindSeries& series, std::ostream& out);
/// JSON metadata (site, cadence, zone) plus the gap list.
void write_gap_manifest(const WindSeries& series, std::ostream& out);

/// Reads back a `write_series_csv` + `write_gap_manifest` pair.
WindSeries load_normalized(const std::filesystem::path& csv_path,
                           const std::filesystem::path& manifest_path);

}  // namespace windfeas::ingest
