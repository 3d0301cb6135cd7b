#include "windfeas/report.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "windfeas/csv.hpp"
#include "windfeas/error.hpp"
#include "windfeas/shear.hpp"

namespace windfeas::report {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

stability::EnergyFloorMode floor_mode(const std::string& s) {
  if (s == "full-charge" || s == "full") {
    return stability::EnergyFloorMode::full_charge;
  }
  if (s == "partial-charge" || s == "partial") {
    return stability::EnergyFloorMode::partial_charge;
  }
  throw ConfigError("energy_floor_mode must be 'full-charge' or 'partial-charge', got '" + s + "'");
}

const char* floor_mode_name(stability::EnergyFloorMode m) {
  return m == stability::EnergyFloorMode::full_charge ? "full-charge" : "partial-charge";
}

RunConfig config_from(const json& j, const fs::path& base) {
  RunConfig c;
  if (!j.contains("datasets") || !j.at("datasets").is_array()) {
    throw ConfigError("config needs a 'datasets' array");
  }
  for (const auto& d : j.at("datasets")) {
    DatasetSpec ds;
    ds.path = resolve(base, d.at("path").get<std::string>());
    if (d.contains("schema")) {
      ds.schema = ingest::schema_from_json(d.at("schema").dump());
    } else if (d.contains("schema_path")) {
      ds.schema = ingest::load_schema(resolve(base, d.at("schema_path").get<std::string>()));
    } else {
      throw ConfigError("dataset entry needs 'schema' or 'schema_path'");
    }
    ds.name = d.value("name", ds.schema.site_id);
    c.datasets.push_back(std::move(ds));
  }
  if (j.contains("intervals_min")) {
    c.intervals_min = j.at("intervals_min").get<std::vector<int>>();
  }
  if (j.contains("shear")) {
    c.shear_alpha = j.at("shear").value("alpha", c.shear_alpha);
  }
  if (!j.contains("turbines") || !j.at("turbines").contains("library")) {
    throw ConfigError("config needs 'turbines.library'");
  }
  c.turbine_library = resolve(base, j.at("turbines").at("library").get<std::string>());
  if (j.at("turbines").contains("ids")) {
    c.turbine_ids = j.at("turbines").at("ids").get<std::vector<std::string>>();
  }
  if (j.contains("ev_profile") && !j.at("ev_profile").is_null()) {
    const auto& e = j.at("ev_profile");
    c.ev_profile = e.is_string() ? ev::load_profile(resolve(base, e.get<std::string>()))
                                 : ev::profile_from_json(e.dump());
  }
  c.window.t_charge_min = ev::charge_time(c.ev_profile);
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (w.contains("t_charge_min") && !w.at("t_charge_min").is_null()) {
      c.window.t_charge_min = w.at("t_charge_min").get<int>();
    }
    if (w.contains("t_ov_min") && !w.at("t_ov_min").is_null()) {
      c.window.t_ov_min = w.at("t_ov_min").get<double>();
    }
    c.window.sigma_max_kw = w.value("sigma_max_kw", c.window.sigma_max_kw);
    if (w.contains("energy_floor_mode")) {
      c.window.energy_floor = floor_mode(w.at("energy_floor_mode").get<std::string>());
    }
  }
  if (j.contains("imputation")) {
    const auto& im = j.at("imputation");
    c.imputation.max_run = im.value("max_run", c.imputation.max_run);
    if (im.contains("min_gap_min") && !im.at("min_gap_min").is_null()) {
      c.imputation.min_gap = Seconds{static_cast<long long>(im.at("min_gap_min").get<double>() * 60.0)};
    }
  }
  c.momentum_uplift = j.value("momentum_uplift", c.momentum_uplift);
  c.windrose_sectors = j.value("windrose_sectors", c.windrose_sectors);
  c.write_normalized_series = j.value("write_normalized_series", c.write_normalized_series);
  c.output_dir = resolve(base, j.value("output_dir", std::string("windfeas_out")));
  c.threads = j.value("threads", c.threads);
  return c;
}

}  // namespace

RunConfig config_from_json(const std::string& text, const fs::path& base_dir) {
  try {
    auto c = config_from(json::parse(text), base_dir);
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid run config: ") + e.what());
  }
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str(), path.parent_path());
}

void validate(const RunConfig& config) {
  if (config.datasets.empty()) {
    throw ConfigError("config must list at least one dataset");
  }
  if (config.intervals_min.empty()) {
    throw ConfigError("config must list at least one averaging interval");
  }
  for (const int m : config.intervals_min) {
    if (m <= 0 || 1440 % m != 0) {
      throw ConfigError("averaging interval " + std::to_string(m) +
                        " min must be positive and divide one day");
    }
  }
  if (config.turbine_library.empty()) {
    throw ConfigError("config must name a turbine library");
  }
  if (!std::isfinite(config.shear_alpha)) {
    throw ConfigError("shear alpha must be finite");
  }
  if (!(config.momentum_uplift > 0.0)) {
    throw ConfigError("momentum_uplift must be positive");
  }
  if (config.imputation.max_run < 1) {
    throw ConfigError("imputation.max_run must be at least 1");
  }
  if (config.windrose_sectors == 0) {
    throw ConfigError("windrose_sectors must be positive");
  }
  ev::validate(config.ev_profile);
  stability::validate(config.window);
}

// ---------------------------------------------------------------------------
// Statistics

DatasetStats compute_stats(const ingest::WindSeries& series, std::size_t windrose_sectors) {
  DatasetStats s;
  const auto speeds = stats::observed_speeds(series);
  if (!speeds.empty()) {
    s.summary = stats::summary_stats(speeds);
  }
  try {
    s.weibull = stats::fit_weibull(speeds);
  } catch (const Error& e) {
    s.weibull_error = e.what();
  }
  s.windrose = stats::windrose(series, windrose_sectors);
  return s;
}

double StabilityCell::pct_of_candidates() const {
  return n_candidates == 0 ? std::numeric_limits<double>::quiet_NaN()
                           : 100.0 * static_cast<double>(n_stable) / static_cast<double>(n_candidates);
}

double StabilityCell::pct_of_complete() const {
  return n_complete == 0 ? std::numeric_limits<double>::quiet_NaN()
                         : 100.0 * static_cast<double>(n_stable) / static_cast<double>(n_complete);
}

// ---------------------------------------------------------------------------
// Aggregation and matrices

std::vector<MonthlyAggregate> aggregate_monthly(const std::vector<DayRecord>& days) {
  std::map<std::pair<std::string, YearMonth>, MonthlyAggregate> acc;
  std::vector<std::pair<std::string, YearMonth>> order;
  for (const auto& d : days) {
    const auto key = std::make_pair(d.turbine_id, year_month(d.result.date));
    auto [it, inserted] = acc.try_emplace(key);
    if (inserted) {
      it->second.turbine_id = d.turbine_id;
      it->second.month = key.second;
      order.push_back(key);
    }
    auto& m = it->second;
    if (d.excluded) {
      m.days_excluded.push_back(d.result.date);
      continue;
    }
    ++m.days_analyzed;
    m.energy_kwh += d.result.total_energy_kwh;
    m.ev_count += d.result.ev_count;
  }
  std::vector<MonthlyAggregate> out;
  out.reserve(order.size());
  for (const auto& k : order) {
    out.push_back(std::move(acc.at(k)));
  }
  return out;
}

std::vector<std::optional<double>> heatmap_row(
    const std::vector<stability::CandidateWindow>& candidates, std::size_t n_slots) {
  std::vector<std::optional<double>> row(n_slots);
  for (const auto& c : candidates) {
    if (c.slot < n_slots && c.complete) {
      row[c.slot] = c.mean_kw;
    }
  }
  return row;
}

void emit_heatmap_matrix(std::ostream& out, const std::vector<std::string>& key_columns,
                         const std::vector<HeatmapRow>& rows, std::size_t n_slots,
                         Seconds slot_stride) {
  for (std::size_t i = 0; i < key_columns.size(); ++i) {
    out << (i ? "," : "") << key_columns[i];
  }
  for (std::size_t s = 0; s < n_slots; ++s) {
    const auto minute = (slot_stride.count() * static_cast<long long>(s)) / 60;
    out << (key_columns.empty() && s == 0 ? "" : ",") << 'm' << minute;
  }
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.keys.size(); ++i) {
      out << (i ? "," : "") << r.keys[i];
    }
    for (std::size_t s = 0; s < n_slots; ++s) {
      out << (r.keys.empty() && s == 0 ? "" : ",")
          << (s < r.cells.size() ? csv::format_report(r.cells[s]) : std::string("NA"));
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      f(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const auto workers = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        f(i);
      }
    });
  }
}

std::string dir_name(const std::string& dataset) {
  std::string s;
  for (const char c : dataset) {
    s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  }
  return s.empty() ? std::string("dataset") : s;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + p.string());
  }
  return out;
}

bool day_touches_gap(Date d, const ingest::WindSeries& series) {
  const Timestamp lo = local_midnight(d, series.utc_offset());
  const Timestamp hi = local_midnight(Date{std::chrono::sys_days{d} + std::chrono::days{1}},
                                      series.utc_offset());
  return std::any_of(series.gaps().begin(), series.gaps().end(),
                     [&](const ingest::GapRange& g) { return g.intersects(lo, hi); });
}

ingest::WindSeries prepare(const ingest::WindSeries& raw, const ImputationParams& p,
                           std::vector<std::string>& warnings) {
  ingest::WindSeries series = raw;
  try {
    series = ingest::impute_short_gaps(raw, p.max_run);
  } catch (const AllMissingError&) {
    warnings.push_back("dataset '" + raw.site_id() + "' has no observed speed; every day is a gap");
    if (raw.empty()) {
      return raw;
    }
    return raw.with_gaps({ingest::GapRange{raw.samples().front().time,
                                           raw.samples().back().time + raw.cadence()}});
  }
  if (p.min_gap) {
    series = series.with_gaps(ingest::detect_long_gaps(series, std::max(*p.min_gap, raw.cadence())));
  }
  return series;
}

struct TurbineOutcome {
  StabilityCell cell;
  std::vector<DayRecord> days;
  std::vector<HeatmapRow> power_rows;
  std::optional<Failure> failure;
};

TurbineOutcome analyze_turbine(const RunConfig& config, const std::string& dataset, int interval,
                               const ingest::WindSeries& averaged, const turbine::TurbineSpec& spec,
                               std::size_t n_slots) {
  TurbineOutcome out;
  out.cell.dataset = dataset;
  out.cell.interval_min = interval;
  out.cell.turbine_id = spec.id;
  try {
    const auto hub = shear::to_hub_height(averaged, spec.hub_height_m, config.shear_alpha);
    const auto power = turbine::power_series(spec, hub, turbine::PowerOptions{config.momentum_uplift});
    auto days = stability::analyze(power.power, config.window, config.ev_profile);
    for (auto& d : days) {
      out.cell.n_candidates += d.n_candidates;
      out.cell.n_complete += d.n_complete;
      out.cell.n_stable += d.n_stable;
      out.power_rows.push_back(
          HeatmapRow{{spec.id, format_date(d.date)}, heatmap_row(d.candidates, n_slots)});
      d.candidates.clear();
      d.candidates.shrink_to_fit();
      const bool excluded = day_touches_gap(d.date, averaged);
      out.days.push_back(DayRecord{spec.id, std::move(d), excluded});
    }
  } catch (const std::exception& e) {
    out.failure = Failure{"dataset=" + dataset + " interval=" + std::to_string(interval) +
                              " turbine=" + spec.id,
                          e.what()};
  }
  return out;
}

json stats_to_json(const DatasetStats& s) {
  json j;
  if (s.summary) {
    j["summary"] = {{"n", s.summary->n},           {"mean", s.summary->mean},
                    {"std", s.summary->std},       {"min", s.summary->min},
                    {"q1", s.summary->q1},         {"median", s.summary->median},
                    {"q3", s.summary->q3},         {"max", s.summary->max}};
  } else {
    j["summary"] = nullptr;
  }
  if (s.weibull) {
    j["weibull"] = {{"scale", s.weibull->scale},
                    {"shape", s.weibull->shape},
                    {"n_samples", s.weibull->n_samples},
                    {"log_likelihood", s.weibull->log_likelihood}};
  } else {
    j["weibull"] = {{"error", s.weibull_error}};
  }
  json rose;
  rose["n_sectors"] = s.windrose.n_sectors;
  rose["n_samples"] = s.windrose.n_samples;
  rose["speed_bin_width"] = s.windrose.speed_bin_width;
  rose["frequency"] = s.windrose.frequency;
  rose["counts"] = s.windrose.counts;
  j["windrose"] = std::move(rose);
  return j;
}

void write_stats_csv(const fs::path& dir, const DatasetStats& s) {
  {
    auto out = open_out(dir / "summary_stats.csv");
    out << "n,mean,std,min,q1,median,q3,max,weibull_scale,weibull_shape\n";
    if (s.summary) {
      const auto& m = *s.summary;
      out << m.n << ',' << csv::format_report(m.mean) << ',' << csv::format_report(m.std) << ','
          << csv::format_report(m.min) << ',' << csv::format_report(m.q1) << ','
          << csv::format_report(m.median) << ',' << csv::format_report(m.q3) << ','
          << csv::format_report(m.max);
    } else {
      out << "0,NA,NA,NA,NA,NA,NA,NA";
    }
    out << ',' << (s.weibull ? csv::format_report(s.weibull->scale) : "NA") << ','
        << (s.weibull ? csv::format_report(s.weibull->shape) : "NA") << '\n';
  }
  auto out = open_out(dir / "windrose.csv");
  const auto& r = s.windrose;
  out << "sector,center_deg,frequency";
  for (std::size_t b = 0; b < r.n_speed_bins; ++b) {
    const double lo = static_cast<double>(b) * r.speed_bin_width;
    out << ",v" << csv::format_report(lo) << (b + 1 == r.n_speed_bins ? "+" : "");
  }
  out << '\n';
  for (std::size_t i = 0; i < r.n_sectors; ++i) {
    out << i << ',' << csv::format_report(static_cast<double>(i) * r.sector_width()) << ','
        << csv::format_report(r.frequency[i]);
    for (const auto c : r.counts[i]) {
      out << ',' << c;
    }
    out << '\n';
  }
}

void write_section(const RunConfig& config, const IntervalSection& sec,
                   const std::vector<const turbine::TurbineSpec*>& turbines,
                   const std::vector<HeatmapRow>& speed_rows,
                   const std::vector<HeatmapRow>& power_rows, std::size_t n_slots,
                   Seconds slot_stride) {
  const auto& dir = sec.directory;
  fs::create_directories(dir);

  {
    auto out = open_out(dir / "table2_stability.csv");
    out << "dataset,interval_min,turbine,hub_height_m,cut_in_ms,rated_ms,cut_out_ms,nominal_kw,"
           "candidates,complete_candidates,stable,stability_pct,stability_pct_complete\n";
    for (std::size_t i = 0; i < sec.stability.size(); ++i) {
      const auto& c = sec.stability[i];
      const auto& t = *turbines[i];
      out << c.dataset << ',' << c.interval_min << ',' << c.turbine_id << ','
          << csv::format_report(t.hub_height_m) << ',' << csv::format_report(t.cut_in_ms) << ','
          << csv::format_report(t.rated_ms) << ',' << csv::format_report(t.cut_out_ms) << ','
          << csv::format_report(t.nominal_kw) << ',' << c.n_candidates << ',' << c.n_complete
          << ',' << c.n_stable << ',' << csv::format_report(c.pct_of_candidates()) << ','
          << csv::format_report(c.pct_of_complete()) << '\n';
    }
  }
  {
    auto out = open_out(dir / "fig7_monthly_evs.csv");
    out << "dataset,interval_min,turbine,month,days_analyzed,days_excluded,energy_kwh,ev_count\n";
    for (const auto& m : sec.monthly) {
      out << sec.dataset << ',' << sec.interval_min << ',' << m.turbine_id << ','
          << m.month.to_string() << ',' << m.days_analyzed << ',' << m.days_excluded.size() << ','
          << csv::format_report(m.energy_kwh) << ',' << m.ev_count << '\n';
    }
  }
  {
    auto out = open_out(dir / "daily_results.csv");
    out << "turbine,date,excluded,candidates,complete_candidates,stable,n_windows,energy_kwh,"
           "ev_count\n";
    for (const auto& d : sec.days) {
      const auto& r = d.result;
      out << d.turbine_id << ',' << format_date(r.date) << ',' << (d.excluded ? 1 : 0) << ','
          << r.n_candidates << ',' << r.n_complete << ',' << r.n_stable << ',' << r.n_windows()
          << ',' << csv::format_report(r.total_energy_kwh) << ',' << r.ev_count << '\n';
    }
  }
  {
    auto out = open_out(dir / "selected_windows.csv");
    out << "turbine,date,start,slot,mean_kw,std_kw,energy_kwh\n";
    for (const auto& d : sec.days) {
      for (const auto& w : d.result.selected) {
        out << d.turbine_id << ',' << format_date(w.date) << ',' << format_iso8601(w.start) << ','
            << w.slot << ',' << csv::format_report(w.mean_kw) << ','
            << csv::format_report(w.std_kw) << ',' << csv::format_report(w.energy_kwh) << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "fig8_speed_matrix.csv");
    emit_heatmap_matrix(out, {"date"}, speed_rows, n_slots, slot_stride);
  }
  {
    auto out = open_out(dir / "fig8_power_matrix.csv");
    emit_heatmap_matrix(out, {"turbine", "date"}, power_rows, n_slots, slot_stride);
  }
  write_stats_csv(dir, sec.stats);

  json j;
  j["dataset"] = sec.dataset;
  j["interval_min"] = sec.interval_min;
  j["n_samples"] = sec.n_samples;
  j["n_missing"] = sec.n_missing;
  j["parameters"] = {{"shear_alpha", config.shear_alpha},
                     {"t_charge_min", config.window.t_charge_min},
                     {"t_ov_min", config.window.t_ov_min ? json(*config.window.t_ov_min) : json(nullptr)},
                     {"sigma_max_kw", config.window.sigma_max_kw},
                     {"energy_floor_mode", floor_mode_name(config.window.energy_floor)},
                     {"momentum_uplift", config.momentum_uplift},
                     {"ev_profile",
                      {{"name", config.ev_profile.name},
                       {"battery_kwh", config.ev_profile.battery_kwh},
                       {"soc_start", config.ev_profile.soc_start},
                       {"soc_end", config.ev_profile.soc_end},
                       {"charger_kw", config.ev_profile.charger_kw},
                       {"energy_per_charge_kwh", ev::energy_per_charge(config.ev_profile)}}}};
  j["stats"] = stats_to_json(sec.stats);
  json stab = json::array();
  for (const auto& c : sec.stability) {
    stab.push_back({{"turbine", c.turbine_id},
                    {"candidates", c.n_candidates},
                    {"complete_candidates", c.n_complete},
                    {"stable", c.n_stable},
                    {"stability_pct", c.n_candidates ? json(c.pct_of_candidates()) : json(nullptr)},
                    {"stability_pct_complete",
                     c.n_complete ? json(c.pct_of_complete()) : json(nullptr)}});
  }
  j["stability"] = std::move(stab);
  json monthly = json::array();
  for (const auto& m : sec.monthly) {
    json excluded = json::array();
    for (const auto& d : m.days_excluded) {
      excluded.push_back(format_date(d));
    }
    monthly.push_back({{"turbine", m.turbine_id},
                       {"month", m.month.to_string()},
                       {"days_analyzed", m.days_analyzed},
                       {"days_excluded", std::move(excluded)},
                       {"energy_kwh", m.energy_kwh},
                       {"ev_count", m.ev_count}});
  }
  j["monthly"] = std::move(monthly);
  auto out = open_out(dir / "report.json");
  out << j.dump(2) << '\n';
}

}  // namespace

FeasibilityReport run(const RunConfig& config) {
  validate(config);
  FeasibilityReport report;
  fs::create_directories(config.output_dir);

  const auto library = turbine::load_turbine_library(config.turbine_library);
  for (const auto& r : library.rejected) {
    std::string msg = "turbine entry " + std::to_string(r.index) + " ('" + r.id + "') rejected:";
    for (const auto& reason : r.reasons) {
      msg += " " + reason + ";";
    }
    report.warnings.push_back(msg);
  }
  std::vector<const turbine::TurbineSpec*> turbines;
  if (config.turbine_ids.empty()) {
    for (const auto& t : library.turbines) {
      turbines.push_back(&t);
    }
  } else {
    for (const auto& id : config.turbine_ids) {
      const auto* t = library.find(id);
      if (t == nullptr) {
        throw ConfigError("turbine '" + id + "' is not a valid entry of " +
                          config.turbine_library.string());
      }
      turbines.push_back(t);
    }
  }
  if (turbines.empty()) {
    throw ConfigError("no valid turbine selected from " + config.turbine_library.string());
  }

  for (const auto& ds : config.datasets) {
    ingest::WindSeries raw("", Seconds{60}, {});
    try {
      raw = ingest::parse_tower_file(ds.path, ds.schema);
    } catch (const std::exception& e) {
      report.failures.push_back(Failure{"dataset=" + ds.name, e.what()});
      continue;
    }
    const auto prepared = prepare(raw, config.imputation, report.warnings);

    DatasetSection dsec;
    dsec.name = ds.name;
    dsec.site_id = raw.site_id();
    dsec.cadence = raw.cadence();
    dsec.n_samples = raw.size();
    dsec.n_missing_raw = raw.missing_count();
    dsec.gaps = prepared.gaps();
    dsec.missing_by_month = ingest::missing_fraction_by_month(raw);

    const fs::path norm_dir = config.output_dir / (dir_name(ds.name) + "_normalized");
    fs::create_directories(norm_dir);
    if (config.write_normalized_series) {
      auto out = open_out(norm_dir / "series.csv");
      ingest::write_series_csv(prepared, out);
    }
    {
      auto out = open_out(norm_dir / "gap_manifest.json");
      ingest::write_gap_manifest(prepared, out);
    }
    {
      auto out = open_out(norm_dir / "missing_by_month.csv");
      out << "month,missing_fraction\n";
      for (const auto& [ym, f] : dsec.missing_by_month) {
        out << ym.to_string() << ',' << csv::format_report(f) << '\n';
      }
    }
    report.datasets.push_back(std::move(dsec));

    for (const int interval : config.intervals_min) {
      const std::string ctx = "dataset=" + ds.name + " interval=" + std::to_string(interval);
      try {
        const auto averaged = ingest::resample_average(prepared, Seconds{60LL * interval});
        const auto geom = stability::geometry(config.window, averaged.cadence());
        if (geom.slots_per_day() == 0) {
          report.warnings.push_back(ctx + ": t_charge exceeds one day; no candidate windows");
        }
        const std::size_t n_slots = geom.slots_per_day();
        const Seconds slot_stride = averaged.cadence() * static_cast<long long>(geom.stride);

        IntervalSection sec;
        sec.dataset = ds.name;
        sec.interval_min = interval;
        sec.directory = config.output_dir / (dir_name(ds.name) + "_" + std::to_string(interval) + "min");
        sec.n_samples = averaged.size();
        sec.n_missing = averaged.missing_count();
        sec.stats = compute_stats(averaged, config.windrose_sectors);

        std::vector<HeatmapRow> speed_rows;
        {
          const auto speeds = averaged.speeds();
          const auto candidates = stability::enumerate_windows(speeds, config.window);
          std::size_t i = 0;
          for (const auto& day : split_days(speeds)) {
            std::vector<stability::CandidateWindow> day_c;
            while (i < candidates.size() && candidates[i].date == day.date) {
              day_c.push_back(candidates[i++]);
            }
            speed_rows.push_back(HeatmapRow{{format_date(day.date)}, heatmap_row(day_c, n_slots)});
          }
        }

        std::vector<TurbineOutcome> outcomes(turbines.size());
        parallel_for(turbines.size(), config.threads, [&](std::size_t i) {
          outcomes[i] = analyze_turbine(config, ds.name, interval, averaged, *turbines[i], n_slots);
        });

        std::vector<HeatmapRow> power_rows;
        std::vector<const turbine::TurbineSpec*> ok_turbines;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
          auto& o = outcomes[i];
          if (o.failure) {
            report.failures.push_back(*o.failure);
            continue;
          }
          ok_turbines.push_back(turbines[i]);
          sec.stability.push_back(o.cell);
          auto monthly = aggregate_monthly(o.days);
          sec.monthly.insert(sec.monthly.end(), monthly.begin(), monthly.end());
          std::move(o.days.begin(), o.days.end(), std::back_inserter(sec.days));
          std::move(o.power_rows.begin(), o.power_rows.end(), std::back_inserter(power_rows));
        }
        write_section(config, sec, ok_turbines, speed_rows, power_rows, n_slots, slot_stride);
        report.sections.push_back(std::move(sec));
      } catch (const std::exception& e) {
        report.failures.push_back(Failure{ctx, e.what()});
      }
    }
  }

  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"context", f.context}, {"message", f.message}});
  }
  json manifest;
  manifest["failures"] = std::move(failures);
  manifest["warnings"] = report.warnings;
  auto out = open_out(config.output_dir / "failures.json");
  out << manifest.dump(2) << '\n';
  return report;
}

std::string stats_json(const ingest::WindSeries& raw, const ingest::WindSeries& averaged,
                       const DatasetStats& stats) {
  json j;
  j["site_id"] = raw.site_id();
  j["cadence_s"] = raw.cadence().count();
  j["interval_s"] = averaged.cadence().count();
  j["n_samples_raw"] = raw.size();
  j["missing_fraction_raw"] = ingest::missing_fraction(raw);
  json months = json::object();
  for (const auto& [ym, f] : ingest::missing_fraction_by_month(raw)) {
    months[ym.to_string()] = f;
  }
  j["missing_by_month"] = std::move(months);
  j["n_samples_averaged"] = averaged.size();
  j["stats"] = stats_to_json(stats);
  return j.dump(2);
}

}  // namespace windfeas::report
