// windfeas: off-grid wind to EV fast-charging feasibility.
//
//   windfeas run --config run.json [--threads N]
//   windfeas validate-turbines turbines.json
//   windfeas stats --wind tower.csv --interval 3 [--schema schema.json]
//   windfeas synth --out DIR [--seed S] [--days N] [--constant-speed V]

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "synth/synthetic.hpp"
#include "windfeas/error.hpp"
#include "windfeas/report.hpp"
#include "windfeas/stats.hpp"
#include "windfeas/turbine.hpp"
#include "windfeas/wind_ingest.hpp"

namespace fs = std::filesystem;
using namespace windfeas;

namespace {

int cmd_run(const std::string& config_path, unsigned threads) {
  auto config = report::load_config(config_path);
  if (threads > 0) {
    config.threads = threads;
  }
  const auto rep = report::run(config);
  for (const auto& w : rep.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  for (const auto& f : rep.failures) {
    std::cerr << "failed: " << f.context << ": " << f.message << '\n';
  }
  for (const auto& s : rep.sections) {
    std::cout << s.directory.string() << '\n';
  }
  return rep.sections.empty() ? 1 : 0;
}

int cmd_validate(const std::string& path) {
  const auto lib = turbine::load_turbine_library(path);
  for (const auto& t : lib.turbines) {
    std::cout << "ok       " << t.id << "  hub " << t.hub_height_m << " m  cut-in " << t.cut_in_ms
              << "  rated " << t.rated_ms << "  cut-out " << t.cut_out_ms << "  " << t.nominal_kw
              << " kW  (" << t.curve.size() << " curve points)\n";
  }
  for (const auto& r : lib.rejected) {
    std::cout << "rejected #" << r.index << " '" << r.id << "'\n";
    for (const auto& reason : r.reasons) {
      std::cout << "         - " << reason << '\n';
    }
  }
  std::cout << lib.turbines.size() << " valid, " << lib.rejected.size() << " rejected\n";
  return lib.rejected.empty() ? 0 : 1;
}

int cmd_stats(const std::string& wind, const std::string& schema_path, int interval,
              std::size_t sectors) {
  ingest::WindSeries raw("", Seconds{60}, {});
  if (!schema_path.empty()) {
    raw = ingest::parse_tower_file(wind, ingest::load_schema(schema_path));
  } else {
    const fs::path manifest = fs::path(wind).parent_path() / "gap_manifest.json";
    if (fs::exists(manifest)) {
      raw = ingest::load_normalized(wind, manifest);
    } else {
      raw = ingest::parse_tower_file(wind, ingest::normalized_schema(fs::path(wind).stem().string()));
    }
  }
  const auto averaged = ingest::resample_average(raw, Seconds{60LL * interval});
  const auto s = report::compute_stats(averaged, sectors);
  std::cout << report::stats_json(raw, averaged, s) << '\n';
  return 0;
}

int cmd_synth(const std::string& out, std::uint64_t seed, int days, double constant_speed,
              bool no_gaps) {
  ingest::WindSeries series("", Seconds{60}, {});
  if (constant_speed >= 0.0) {
    series = synth::constant_series(constant_speed, days);
  } else {
    synth::SyntheticOptions o;
    o.seed = seed;
    o.days = days;
    o.long_gaps = !no_gaps;
    series = synth::synthetic_series(o);
  }
  synth::write_fixture_bundle(out, series);
  std::cout << "wrote fixture bundle to " << out << " (" << series.size() << " samples)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind-powered EV fast-charging feasibility analysis"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned threads = 0;
  auto* run = app.add_subcommand("run", "Run the full pipeline from a config file");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--threads", threads, "Worker threads (overrides the config)");

  std::string library;
  auto* validate = app.add_subcommand("validate-turbines", "Check a turbine library file");
  validate->add_option("path", library, "Turbine library (JSON or CSV)")->required();

  std::string wind;
  std::string schema;
  int interval = 1;
  std::size_t sectors = 16;
  auto* stats = app.add_subcommand("stats", "Summary, Weibull and windrose statistics");
  stats->add_option("--wind", wind, "Tower file")->required()->check(CLI::ExistingFile);
  stats->add_option("--interval", interval, "Averaging interval in minutes")->check(CLI::PositiveNumber);
  stats->add_option("--schema", schema, "Schema JSON (default: normalized series format)");
  stats->add_option("--sectors", sectors, "Windrose sectors");

  std::string out_dir;
  std::uint64_t seed = 1;
  int days = 365;
  double constant_speed = -1.0;
  bool no_gaps = false;
  auto* synth = app.add_subcommand("synth", "Write a synthetic tower record and run config");
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_option("--seed", seed, "Generator seed");
  synth->add_option("--days", days, "Number of days")->check(CLI::PositiveNumber);
  synth->add_option("--constant-speed", constant_speed, "Constant measured speed (m/s) instead of random wind");
  synth->add_flag("--no-gaps", no_gaps, "Omit the long missing stretches");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cmd_run(config_path, threads);
    }
    if (*validate) {
      return cmd_validate(library);
    }
    if (*stats) {
      return cmd_stats(wind, schema, interval, sectors);
    }
    if (*synth) {
      return cmd_synth(out_dir, seed, days, constant_speed, no_gaps);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
