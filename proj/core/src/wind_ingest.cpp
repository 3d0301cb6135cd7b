#include "windfeas/wind_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "windfeas/csv.hpp"
#include "windfeas/error.hpp"

namespace windfeas::ingest {

using nlohmann::json;

// ---------------------------------------------------------------------------
// WindSeries

WindSeries::WindSeries(std::string site_id, Seconds cadence, std::vector<WindSample> samples,
                       std::vector<GapRange> gaps, Seconds utc_offset)
    : site_id_(std::move(site_id)),
      cadence_(cadence),
      samples_(std::move(samples)),
      gaps_(std::move(gaps)),
      utc_offset_(utc_offset) {
  if (cadence_.count() <= 0) {
    throw DomainError("wind series cadence must be positive");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (i > 0 && s.time - samples_[i - 1].time != cadence_) {
      throw DomainError("wind series timestamps must advance by exactly the cadence (sample " +
                        std::to_string(i) + ", " + format_iso8601(s.time) + ")");
    }
    if (s.speed && !(*s.speed >= 0.0 && std::isfinite(*s.speed))) {
      throw DomainError("wind speed must be missing or >= 0 at " + format_iso8601(s.time));
    }
    if (s.direction && !(*s.direction >= 0.0 && *s.direction < 360.0)) {
      throw DomainError("wind direction must lie in [0, 360) at " + format_iso8601(s.time));
    }
  }
  for (std::size_t g = 0; g < gaps_.size(); ++g) {
    if (!(gaps_[g].start < gaps_[g].end)) {
      throw DomainError("gap range must be non-empty");
    }
    if (g > 0 && gaps_[g].start < gaps_[g - 1].end) {
      throw DomainError("gap ranges must be sorted and disjoint");
    }
  }
  if (!gaps_.empty()) {
    std::size_t g = 0;
    for (const auto& s : samples_) {
      while (g < gaps_.size() && gaps_[g].end <= s.time) {
        ++g;
      }
      if (g < gaps_.size() && gaps_[g].contains(s.time) && s.speed) {
        throw DomainError("sample at " + format_iso8601(s.time) +
                          " lies inside a gap but has a speed");
      }
    }
  }
}

std::size_t WindSeries::missing_count() const {
  return static_cast<std::size_t>(
      std::count_if(samples_.begin(), samples_.end(), [](const WindSample& s) { return !s.speed; }));
}

bool WindSeries::in_gap(Timestamp t) const {
  auto it = std::upper_bound(gaps_.begin(), gaps_.end(), t,
                             [](Timestamp v, const GapRange& g) { return v < g.end; });
  return it != gaps_.end() && it->contains(t);
}

WindSeries WindSeries::with_gaps(std::vector<GapRange> gaps) const {
  return WindSeries(site_id_, cadence_, samples_, std::move(gaps), utc_offset_);
}

WindSeries WindSeries::with_speeds(const std::vector<std::optional<double>>& speeds) const {
  if (speeds.size() != samples_.size()) {
    throw DomainError("speed vector length does not match the series");
  }
  auto samples = samples_;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].speed = speeds[i];
  }
  return WindSeries(site_id_, cadence_, std::move(samples), gaps_, utc_offset_);
}

ValueSeries WindSeries::speeds() const {
  ValueSeries out;
  out.start = samples_.empty() ? Timestamp{} : samples_.front().time;
  out.cadence = cadence_;
  out.utc_offset = utc_offset_;
  out.values.reserve(samples_.size());
  for (const auto& s : samples_) {
    out.values.push_back(s.speed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schema

namespace {

TowerSchema schema_from(const json& j) {
  TowerSchema s;
  s.site_id = j.value("site_id", s.site_id);
  const std::string delim = j.value("delimiter", std::string(","));
  if (delim == "\\t" || delim == "tab") {
    s.delimiter = '\t';
  } else if (delim.size() == 1) {
    s.delimiter = delim[0];
  } else {
    throw ConfigError("schema delimiter must be a single character, got '" + delim + "'");
  }
  s.skip_lines = j.value("skip_lines", std::size_t{0});
  if (j.contains("timestamp_columns")) {
    s.timestamp_columns = j.at("timestamp_columns").get<std::vector<std::string>>();
  } else if (j.contains("timestamp_column")) {
    s.timestamp_columns = {j.at("timestamp_column").get<std::string>()};
  }
  if (s.timestamp_columns.empty()) {
    throw ConfigError("schema must name at least one timestamp column");
  }
  s.timestamp_format = j.value("timestamp_format", s.timestamp_format);
  s.utc_offset = Seconds{static_cast<long long>(j.value("utc_offset_minutes", 0)) * 60};
  s.timestamps_utc = j.value("timestamps_utc", false);
  if (!j.contains("speed_column")) {
    throw ConfigError("schema is missing required field 'speed_column'");
  }
  s.speed_column = j.at("speed_column").get<std::string>();
  if (j.contains("direction_column") && !j.at("direction_column").is_null()) {
    s.direction_column = j.at("direction_column").get<std::string>();
  }
  if (j.contains("height_column") && !j.at("height_column").is_null()) {
    s.height_column = j.at("height_column").get<std::string>();
  }
  if (j.contains("height_m") && !j.at("height_m").is_null()) {
    s.height_m = j.at("height_m").get<double>();
  }
  if (!s.height_column && !s.height_m) {
    throw ConfigError("schema must give either 'height_column' or 'height_m'");
  }
  if (s.height_m && !(*s.height_m > 0.0)) {
    throw ConfigError("schema height_m must be positive");
  }
  if (j.contains("sentinels")) {
    for (const auto& v : j.at("sentinels")) {
      s.sentinels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  if (j.contains("cadence_s") && !j.at("cadence_s").is_null()) {
    const auto c = j.at("cadence_s").get<long long>();
    if (c <= 0) {
      throw ConfigError("schema cadence_s must be positive");
    }
    s.cadence = Seconds{c};
  }
  if (j.contains("missing_flag_column") && !j.at("missing_flag_column").is_null()) {
    s.missing_flag_column = j.at("missing_flag_column").get<std::string>();
  }
  return s;
}

}  // namespace

TowerSchema schema_from_json(const std::string& json_text) {
  try {
    return schema_from(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid schema document: ") + e.what());
  }
}

TowerSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open schema file");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return schema_from(json::parse(buf.str()));
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, std::string("invalid schema JSON: ") + e.what());
  }
}

TowerSchema normalized_schema(std::string site_id, Seconds utc_offset) {
  TowerSchema s;
  s.site_id = std::move(site_id);
  s.timestamp_columns = {"timestamp"};
  s.timestamp_format = "%Y-%m-%dT%H:%M:%SZ";
  s.utc_offset = utc_offset;
  s.timestamps_utc = true;
  s.speed_column = "speed";
  s.direction_column = "direction";
  s.height_column = "height_m";
  s.missing_flag_column = "missing";
  return s;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct RawRow {
  Timestamp time;
  std::optional<double> speed;
  std::optional<double> direction;
  std::optional<double> height;
  std::size_t line = 0;
};

bool is_sentinel(std::string_view field, const std::vector<std::string>& sentinels) {
  const auto text = csv::trim(field);
  if (text.empty()) {
    return true;
  }
  const auto numeric = csv::parse_double(text);
  for (const auto& s : sentinels) {
    if (text == csv::trim(s)) {
      return true;
    }
    if (numeric) {
      const auto sv = csv::parse_double(s);
      if (sv && *sv == *numeric) {
        return true;
      }
    }
  }
  return false;
}

std::optional<double> read_value(std::string_view field, const std::vector<std::string>& sentinels) {
  if (is_sentinel(field, sentinels)) {
    return std::nullopt;
  }
  return csv::parse_double(field);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::string& source, std::size_t line) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (csv::trim(header[i]) == csv::trim(name)) {
      return i;
    }
  }
  throw ParseError(source, line, "malformed header: column '" + name + "' not found");
}

Seconds infer_cadence(const std::vector<RawRow>& rows) {
  std::unordered_map<long long, std::size_t> counts;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ++counts[(rows[i].time - rows[i - 1].time).count()];
  }
  long long best = 0;
  std::size_t best_count = 0;
  for (const auto& [diff, n] : counts) {
    if (n > best_count || (n == best_count && diff < best)) {
      best = diff;
      best_count = n;
    }
  }
  return Seconds{best};
}

}  // namespace

WindSeries parse_tower_stream(std::istream& in, const TowerSchema& schema,
                              const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  for (std::size_t i = 0; i < schema.skip_lines; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(source_name, line_no, "malformed header: file ends inside the preamble");
    }
    ++line_no;
  }
  if (!std::getline(in, line)) {
    throw ParseError(source_name, line_no + 1, "malformed header: missing header row");
  }
  ++line_no;
  if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const std::size_t header_line = line_no;
  const auto header = csv::split_record(line, schema.delimiter);

  std::vector<std::size_t> ts_cols;
  for (const auto& name : schema.timestamp_columns) {
    ts_cols.push_back(column_index(header, name, source_name, header_line));
  }
  const std::size_t speed_col = column_index(header, schema.speed_column, source_name, header_line);
  std::optional<std::size_t> dir_col;
  if (schema.direction_column) {
    dir_col = column_index(header, *schema.direction_column, source_name, header_line);
  }
  std::optional<std::size_t> height_col;
  if (schema.height_column) {
    height_col = column_index(header, *schema.height_column, source_name, header_line);
  }
  std::optional<std::size_t> flag_col;
  if (schema.missing_flag_column) {
    flag_col = column_index(header, *schema.missing_flag_column, source_name, header_line);
  }

  const Seconds ts_offset = schema.timestamps_utc ? Seconds{0} : schema.utc_offset;
  std::vector<RawRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) {
      continue;
    }
    const auto fields = csv::split_record(line, schema.delimiter);
    auto field = [&](std::size_t idx) -> std::string_view {
      if (idx >= fields.size()) {
        throw ParseError(source_name, line_no,
                         "row has " + std::to_string(fields.size()) + " fields, expected at least " +
                             std::to_string(idx + 1));
      }
      return fields[idx];
    };
    std::string ts_text;
    for (std::size_t k = 0; k < ts_cols.size(); ++k) {
      if (k > 0) {
        ts_text += ' ';
      }
      ts_text += csv::trim(field(ts_cols[k]));
    }
    const auto ts = parse_timestamp(ts_text, schema.timestamp_format, ts_offset);
    if (!ts) {
      throw ParseError(source_name, line_no,
                       "cannot parse timestamp '" + ts_text + "' with format '" +
                           schema.timestamp_format + "'");
    }
    RawRow row;
    row.time = *ts;
    row.line = line_no;
    row.speed = read_value(field(speed_col), schema.sentinels);
    if (row.speed && *row.speed < 0.0) {
      row.speed.reset();
    }
    if (dir_col) {
      row.direction = read_value(field(*dir_col), schema.sentinels);
      if (row.direction) {
        double d = *row.direction;
        if (d == 360.0) {
          d = 0.0;
        }
        if (d >= 0.0 && d < 360.0) {
          row.direction = d;
        } else {
          row.direction.reset();
        }
      }
    }
    if (height_col) {
      row.height = csv::parse_double(field(*height_col));
    }
    if (flag_col) {
      const auto flag = csv::trim(field(*flag_col));
      if (flag == "1" || flag == "true") {
        row.speed.reset();
      }
    }
    rows.push_back(row);
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const RawRow& a, const RawRow& b) { return a.time < b.time; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].time == rows[i - 1].time) {
      const std::size_t dup_line = std::max(rows[i].line, rows[i - 1].line);
      throw ParseError(source_name, dup_line,
                       "duplicate timestamp " + format_iso8601(rows[i].time));
    }
  }

  if (rows.empty()) {
    return WindSeries(schema.site_id, schema.cadence.value_or(Seconds{60}), {}, {},
                      schema.utc_offset);
  }
  Seconds cadence = schema.cadence.value_or(Seconds{0});
  if (cadence.count() == 0) {
    if (rows.size() < 2) {
      throw ParseError(source_name, rows.front().line,
                       "cannot infer cadence from a single row; set cadence_s in the schema");
    }
    cadence = infer_cadence(rows);
  }

  const double default_height = schema.height_m.value_or(0.0);
  std::vector<WindSample> samples;
  const Timestamp t0 = rows.front().time;
  const auto span = (rows.back().time - t0).count();
  samples.reserve(static_cast<std::size_t>(span / cadence.count()) + 1);
  double last_height = default_height;
  for (const auto& row : rows) {
    const auto offset = (row.time - t0).count();
    if (offset % cadence.count() != 0) {
      throw ParseError(source_name, row.line,
                       "timestamp " + format_iso8601(row.time) + " is off the " +
                           std::to_string(cadence.count()) + " s sample grid");
    }
    const double height = row.height.value_or(last_height);
    if (!(height > 0.0)) {
      throw ParseError(source_name, row.line, "measurement height must be positive");
    }
    // absent rows become missing samples
    while (!samples.empty() && samples.back().time + cadence < row.time) {
      samples.push_back(WindSample{samples.back().time + cadence, std::nullopt, std::nullopt,
                                   last_height});
    }
    samples.push_back(WindSample{row.time, row.speed, row.direction, height});
    last_height = height;
  }
  return WindSeries(schema.site_id, cadence, std::move(samples), {}, schema.utc_offset);
}

WindSeries parse_tower_file(const std::filesystem::path& path, const TowerSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "file not found or unreadable");
  }
  return parse_tower_stream(in, schema, path.string());
}

// ---------------------------------------------------------------------------
// Imputation and gaps

namespace {

struct Run {
  std::size_t begin;
  std::size_t end;  // exclusive
};

std::vector<Run> missing_runs(const std::vector<std::optional<double>>& v) {
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < v.size()) {
    if (v[i]) {
      ++i;
      continue;
    }
    const std::size_t b = i;
    while (i < v.size() && !v[i]) {
      ++i;
    }
    runs.push_back(Run{b, i});
  }
  return runs;
}

std::vector<GapRange> merge_gaps(std::vector<GapRange> gaps) {
  std::sort(gaps.begin(), gaps.end(),
            [](const GapRange& a, const GapRange& b) { return a.start < b.start; });
  std::vector<GapRange> merged;
  for (const auto& g : gaps) {
    if (!merged.empty() && g.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, g.end);
    } else {
      merged.push_back(g);
    }
  }
  return merged;
}

std::optional<double> window_mean(const std::vector<std::optional<double>>& v, std::size_t t) {
  static constexpr long long kOffsets[] = {-2, -1, 1, 2};
  double sum = 0.0;
  int n = 0;
  for (const long long off : kOffsets) {
    const long long j = static_cast<long long>(t) + off;
    if (j < 0 || j >= static_cast<long long>(v.size()) || !v[static_cast<std::size_t>(j)]) {
      continue;
    }
    sum += *v[static_cast<std::size_t>(j)];
    ++n;
  }
  if (n == 0) {
    return std::nullopt;
  }
  return sum / n;
}

}  // namespace

WindSeries impute_short_gaps(const WindSeries& series, std::size_t max_run) {
  if (max_run < 1) {
    throw ConfigError("imputation max_run must be at least 1");
  }
  if (series.empty() || series.missing_count() == series.size()) {
    throw AllMissingError("series '" + series.site_id() + "' has no observed wind speed");
  }
  auto speeds = series.speeds().values;
  const auto& samples = series.samples();
  std::vector<GapRange> gaps = series.gaps();

  for (const auto& run : missing_runs(speeds)) {
    const std::size_t len = run.end - run.begin;
    const bool touches_gap = std::any_of(
        samples.begin() + static_cast<std::ptrdiff_t>(run.begin),
        samples.begin() + static_cast<std::ptrdiff_t>(run.end),
        [&](const WindSample& s) { return series.in_gap(s.time); });
    if (len > max_run || touches_gap) {
      if (len > max_run) {
        gaps.push_back(GapRange{samples[run.begin].time,
                                samples[run.end - 1].time + series.cadence()});
      }
      continue;
    }
    if (run.begin > 0) {
      for (std::size_t t = run.begin; t < run.end; ++t) {
        speeds[t] = window_mean(speeds, t);
      }
    } else {
      for (std::size_t t = run.end; t-- > run.begin;) {
        speeds[t] = window_mean(speeds, t);
      }
    }
  }

  auto samples_out = samples;
  for (std::size_t i = 0; i < samples_out.size(); ++i) {
    samples_out[i].speed = speeds[i];
  }
  return WindSeries(series.site_id(), series.cadence(), std::move(samples_out),
                    merge_gaps(std::move(gaps)), series.utc_offset());
}

std::vector<GapRange> detect_long_gaps(const WindSeries& series, Seconds min_gap) {
  if (min_gap < series.cadence()) {
    throw ConfigError("min_gap must be at least the series cadence");
  }
  std::vector<GapRange> gaps;
  const auto& samples = series.samples();
  for (const auto& run : missing_runs(series.speeds().values)) {
    const Seconds duration = series.cadence() * static_cast<long long>(run.end - run.begin);
    if (duration >= min_gap) {
      gaps.push_back(GapRange{samples[run.begin].time, samples[run.begin].time + duration});
    }
  }
  return gaps;
}

// ---------------------------------------------------------------------------
// Resampling

namespace {

long long floor_div(long long a, long long b) {
  const long long q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

std::optional<double> circular_mean(double sum_sin, double sum_cos, int n) {
  if (n == 0) {
    return std::nullopt;
  }
  const double r = std::hypot(sum_sin, sum_cos);
  if (r <= 1e-12 * n) {
    return std::nullopt;
  }
  double deg = std::atan2(sum_sin, sum_cos) * 180.0 / std::numbers::pi;
  if (deg < 0.0) {
    deg += 360.0;
  }
  if (deg >= 360.0) {
    deg -= 360.0;
  }
  return deg;
}

}  // namespace

WindSeries resample_average(const WindSeries& series, Seconds interval) {
  const auto cad = series.cadence().count();
  if (interval.count() <= 0 || interval.count() % cad != 0) {
    throw ConfigError("averaging interval of " + std::to_string(interval.count()) +
                      " s is not a positive multiple of the " + std::to_string(cad) +
                      " s cadence");
  }
  if (86400 % interval.count() != 0) {
    throw ConfigError("averaging interval must divide one day so windows align to midnight");
  }
  if (series.empty()) {
    return WindSeries(series.site_id(), interval, {}, {}, series.utc_offset());
  }
  const auto& in = series.samples();
  const long long off = series.utc_offset().count();
  const long long step = interval.count();
  auto window_of = [&](Timestamp t) {
    return floor_div(t.time_since_epoch().count() + off, step);
  };
  const long long first_w = window_of(in.front().time);
  const long long last_w = window_of(in.back().time);
  const std::size_t per_window = static_cast<std::size_t>(step / cad);

  std::vector<WindSample> out;
  out.reserve(static_cast<std::size_t>(last_w - first_w + 1));
  std::size_t i = 0;
  for (long long w = first_w; w <= last_w; ++w) {
    const Timestamp ws{Seconds{w * step - off}};
    const Timestamp we = ws + interval;
    double sum = 0.0;
    double ss = 0.0;
    double sc = 0.0;
    int nd = 0;
    std::size_t n = 0;
    bool complete = true;
    double height = in[std::min(i, in.size() - 1)].height_m;
    while (i < in.size() && in[i].time < we) {
      const auto& s = in[i];
      if (s.time >= ws) {
        if (n == 0) {
          height = s.height_m;
        }
        ++n;
        if (s.speed) {
          sum += *s.speed;
        } else {
          complete = false;
        }
        if (s.direction) {
          const double rad = *s.direction * std::numbers::pi / 180.0;
          ss += std::sin(rad);
          sc += std::cos(rad);
          ++nd;
        }
      }
      ++i;
    }
    const bool touches_gap = std::any_of(series.gaps().begin(), series.gaps().end(),
                                         [&](const GapRange& g) { return g.intersects(ws, we); });
    WindSample o{ws, std::nullopt, std::nullopt, height};
    if (complete && n == per_window && !touches_gap) {
      o.speed = sum / static_cast<double>(n);
      o.direction = circular_mean(ss, sc, nd);
    }
    out.push_back(o);
  }

  std::vector<GapRange> gaps;
  const Timestamp out_begin = out.front().time;
  const Timestamp out_end = out.back().time + interval;
  for (const auto& g : series.gaps()) {
    const Timestamp s{Seconds{floor_div(g.start.time_since_epoch().count() + off, step) * step - off}};
    const long long e_w = floor_div(g.end.time_since_epoch().count() + off - 1, step) + 1;
    const Timestamp e{Seconds{e_w * step - off}};
    const GapRange clipped{std::max(s, out_begin), std::min(e, out_end)};
    if (clipped.start < clipped.end) {
      gaps.push_back(clipped);
    }
  }
  return WindSeries(series.site_id(), interval, std::move(out), merge_gaps(std::move(gaps)),
                    series.utc_offset());
}

// ---------------------------------------------------------------------------
// Missing-data accounting

std::map<YearMonth, double> missing_fraction_by_month(const WindSeries& series) {
  std::map<YearMonth, std::size_t> observed;
  std::map<YearMonth, bool> touched;
  for (const auto& s : series.samples()) {
    const auto ym = year_month(local_date(s.time, series.utc_offset()));
    touched[ym] = true;
    if (s.speed) {
      ++observed[ym];
    }
  }
  std::map<YearMonth, double> out;
  const double per_day = 86400.0 / static_cast<double>(series.cadence().count());
  for (const auto& [ym, unused] : touched) {
    const double expected = per_day * ym.days();
    const double obs = static_cast<double>(observed[ym]);
    out[ym] = std::clamp((expected - obs) / expected, 0.0, 1.0);
  }
  return out;
}

double missing_fraction(const WindSeries& series) {
  if (series.empty()) {
    return 1.0;
  }
  return static_cast<double>(series.missing_count()) / static_cast<double>(series.size());
}

// ---------------------------------------------------------------------------
// Serialization

void write_series_csv(const WindSeries& series, std::ostream& out) {
  out << "timestamp,speed,direction,height_m,missing\n";
  for (const auto& s : series.samples()) {
    out << format_iso8601(s.time) << ',' << (s.speed ? csv::format_exact(*s.speed) : "") << ','
        << (s.direction ? csv::format_exact(*s.direction) : "") << ','
        << csv::format_exact(s.height_m) << ',' << (s.speed ? '0' : '1') << '\n';
  }
}

void write_gap_manifest(const WindSeries& series, std::ostream& out) {
  json j;
  j["site_id"] = series.site_id();
  j["cadence_s"] = series.cadence().count();
  j["utc_offset_s"] = series.utc_offset().count();
  j["n_samples"] = series.size();
  j["n_missing"] = series.missing_count();
  if (!series.empty()) {
    j["start"] = format_iso8601(series.samples().front().time);
    j["end"] = format_iso8601(series.samples().back().time + series.cadence());
  }
  json gaps = json::array();
  for (const auto& g : series.gaps()) {
    gaps.push_back({{"start", format_iso8601(g.start)},
                    {"end", format_iso8601(g.end)},
                    {"duration_s", g.duration().count()}});
  }
  j["gaps"] = std::move(gaps);
  out << j.dump(2) << '\n';
}

WindSeries load_normalized(const std::filesystem::path& csv_path,
                           const std::filesystem::path& manifest_path) {
  std::ifstream min(manifest_path);
  if (!min) {
    throw ParseError(manifest_path.string(), 0, "cannot open gap manifest");
  }
  json m;
  try {
    m = json::parse(min);
  } catch (const json::exception& e) {
    throw ParseError(manifest_path.string(), 0, std::string("invalid manifest JSON: ") + e.what());
  }
  auto schema = normalized_schema(m.value("site_id", std::string("site")),
                                  Seconds{m.value("utc_offset_s", 0LL)});
  schema.cadence = Seconds{m.at("cadence_s").get<long long>()};
  auto series = parse_tower_file(csv_path, schema);
  std::vector<GapRange> gaps;
  for (const auto& g : m.value("gaps", json::array())) {
    const auto s = parse_timestamp(g.at("start").get<std::string>(), "%Y-%m-%dT%H:%M:%SZ");
    const auto e = parse_timestamp(g.at("end").get<std::string>(), "%Y-%m-%dT%H:%M:%SZ");
    if (!s || !e) {
      throw ParseError(manifest_path.string(), 0, "bad gap timestamp");
    }
    gaps.push_back(GapRange{*s, *e});
  }
  return series.with_gaps(std::move(gaps));
}

}  // namespace windfeas::ingest
