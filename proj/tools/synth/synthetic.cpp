#include "synth/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "windfeas/csv.hpp"
#include "windfeas/error.hpp"

namespace windfeas::synth {

using nlohmann::json;

namespace {

Timestamp year_start(int year) {
  return Timestamp{std::chrono::sys_days{std::chrono::year{year} / 1 / 1}.time_since_epoch()};
}

}  // namespace

ingest::WindSeries synthetic_series(const SyntheticOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t per_day = static_cast<std::size_t>(86400 / o.cadence.count());
  const std::size_t n = per_day * static_cast<std::size_t>(o.days);
  const Timestamp t0 = year_start(o.start_year);
  const double innovation = std::sqrt(1.0 - o.persistence * o.persistence);

  std::vector<ingest::WindSample> samples;
  samples.reserve(n);
  double z = noise(rng);
  double dir = 360.0 * unit(rng);
  for (std::size_t i = 0; i < n; ++i) {
    z = o.persistence * z + innovation * noise(rng);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i % per_day) /
                         static_cast<double>(per_day);
    const double zz = z + 0.3 * std::sin(phase - std::numbers::pi / 2.0);
    const double u = 0.5 * std::erfc(-zz / std::sqrt(2.0));
    const double speed = o.weibull_scale * std::pow(-std::log1p(-std::min(u, 1.0 - 1e-12)),
                                                    1.0 / o.weibull_shape);
    dir = std::fmod(dir + 3.0 * noise(rng) + 360.0, 360.0);
    if (dir >= 360.0) {
      dir = 0.0;
    }
    samples.push_back(ingest::WindSample{t0 + o.cadence * static_cast<long long>(i), speed, dir,
                                         o.height_m});
  }

  for (auto& s : samples) {
    if (unit(rng) < o.isolated_missing) {
      s.speed.reset();
    }
  }
  if (o.long_gaps && o.days >= 40) {
    // one 3-day and one 2-day hole, plus a 40-minute run that stays below a 1 h gap threshold
    auto blank = [&](std::size_t from, std::size_t count) {
      for (std::size_t i = from; i < std::min(n, from + count); ++i) {
        samples[i].speed.reset();
        samples[i].direction.reset();
      }
    };
    blank(per_day * static_cast<std::size_t>(o.days / 3) + per_day / 3, per_day * 3);
    blank(per_day * static_cast<std::size_t>(2 * o.days / 3), per_day * 2);
    blank(per_day * 10 + per_day / 2, 40 * 60 / static_cast<std::size_t>(o.cadence.count()));
  }
  return ingest::WindSeries("synthetic", o.cadence, std::move(samples));
}

ingest::WindSeries constant_series(double speed_ms, int days, int start_year, Seconds cadence,
                                   double height_m) {
  const std::size_t n = static_cast<std::size_t>(86400 / cadence.count()) *
                        static_cast<std::size_t>(days);
  const Timestamp t0 = year_start(start_year);
  std::vector<ingest::WindSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples.push_back(
        ingest::WindSample{t0 + cadence * static_cast<long long>(i), speed_ms, 270.0, height_m});
  }
  return ingest::WindSeries("constant", cadence, std::move(samples));
}

void write_tower_csv(const ingest::WindSeries& series, std::ostream& out,
                     const std::string& sentinel) {
  out << "timestamp,speed,direction,height\n";
  for (const auto& s : series.samples()) {
    out << format_iso8601(s.time) << ',' << (s.speed ? csv::format_exact(*s.speed) : sentinel)
        << ',' << (s.direction ? csv::format_exact(*s.direction) : sentinel) << ','
        << csv::format_exact(s.height_m) << '\n';
  }
}

std::string tower_schema_json(const std::string& site_id, double height_m,
                              const std::string& sentinel) {
  json j;
  j["site_id"] = site_id;
  j["delimiter"] = ",";
  j["timestamp_columns"] = {"timestamp"};
  j["timestamp_format"] = "%Y-%m-%dT%H:%M:%SZ";
  j["utc_offset_minutes"] = 0;
  j["speed_column"] = "speed";
  j["direction_column"] = "direction";
  j["height_column"] = "height";
  j["height_m"] = height_m;
  j["sentinels"] = {sentinel};
  return j.dump(2);
}

std::vector<turbine::TurbineSpec> sample_turbines() {
  auto make = [](std::string id, double hub, double cut_in, double rated, double cut_out,
                 double kw) {
    turbine::TurbineSpec t{std::move(id), hub, cut_in, rated, cut_out, kw, {}};
    const double c3 = cut_in * cut_in * cut_in;
    const double r3 = rated * rated * rated;
    for (double v = cut_in; v <= cut_out + 1e-9; v += 0.5) {
      const double p = v >= rated ? kw : kw * (v * v * v - c3) / (r3 - c3);
      t.curve.push_back(turbine::CurvePoint{v, std::round(p * 1000.0) / 1000.0});
    }
    return t;
  };
  return {make("no16", 134, 3, 10, 20, 3300), make("no73", 99.5, 3, 10, 25, 2300),
          make("no124", 137, 3, 10, 25, 3500)};
}

void write_fixture_bundle(const std::filesystem::path& dir, const ingest::WindSeries& series,
                          const std::vector<std::string>& turbine_ids) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
      throw Error("cannot write " + (dir / name).string());
    }
    return out;
  };
  const double height = series.empty() ? 20.0 : series.samples().front().height_m;
  {
    auto out = open("tower.csv");
    write_tower_csv(series, out);
  }
  {
    auto out = open("schema.json");
    out << tower_schema_json(series.site_id(), height) << '\n';
  }
  {
    auto out = open("turbines.json");
    turbine::write_turbine_library_json(sample_turbines(), out);
  }
  {
    auto out = open("ev.json");
    out << json{{"name", "tesla-model3-sr-plus"},
                {"battery_kwh", 50.0},
                {"soc_start", 0.1},
                {"soc_end", 0.8},
                {"charger_kw", 100.0}}
               .dump(2)
        << '\n';
  }
  json cfg;
  cfg["datasets"] = {{{"name", series.site_id()}, {"path", "tower.csv"}, {"schema_path", "schema.json"}}};
  cfg["intervals_min"] = {1, 2, 3};
  cfg["shear"] = {{"alpha", 0.143}};
  cfg["turbines"] = {{"library", "turbines.json"}};
  if (!turbine_ids.empty()) {
    cfg["turbines"]["ids"] = turbine_ids;
  }
  cfg["ev_profile"] = "ev.json";
  cfg["window"] = {{"t_charge_min", 21}, {"sigma_max_kw", 0.1}, {"energy_floor_mode", "full-charge"}};
  cfg["imputation"] = {{"max_run", 5}, {"min_gap_min", 60}};
  cfg["output_dir"] = "out";
  auto out = open("config.json");
  out << cfg.dump(2) << '\n';
}

}  // namespace windfeas::synth
