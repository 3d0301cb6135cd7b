#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "synth/synthetic.hpp"
#include "windfeas/error.hpp"
#include "windfeas/turbine.hpp"

using namespace windfeas;
using namespace windfeas::turbine;
using namespace std::chrono;

namespace {

TurbineLibrary sample_library() {
  return load_turbine_library(std::filesystem::path(WINDFEAS_TEST_DATA_DIR) / "turbines_sample.json");
}

}  // namespace

TEST(Library, TableRowsParseExactly) {
  const auto lib = sample_library();
  EXPECT_TRUE(lib.rejected.empty());
  const auto* no16 = lib.find("no16");
  ASSERT_NE(no16, nullptr);
  EXPECT_EQ(no16->hub_height_m, 134.0);
  EXPECT_EQ(no16->cut_in_ms, 3.0);
  EXPECT_EQ(no16->rated_ms, 10.0);
  EXPECT_EQ(no16->cut_out_ms, 20.0);
  EXPECT_EQ(no16->nominal_kw, 3300.0);
  const auto* no124 = lib.find("no124");
  ASSERT_NE(no124, nullptr);
  EXPECT_EQ(no124->hub_height_m, 137.0);
  EXPECT_EQ(no124->cut_in_ms, 3.0);
  EXPECT_EQ(no124->rated_ms, 10.0);
  EXPECT_EQ(no124->cut_out_ms, 25.0);
  EXPECT_EQ(no124->nominal_kw, 3500.0);
  EXPECT_EQ(lib.find("no999"), nullptr);
}

TEST(Library, InvalidEntryNamed) {
  const auto lib = parse_turbine_library_json(R"([
    {"id": "ok", "hub_height_m": 100, "cut_in_ms": 3, "rated_ms": 10, "cut_out_ms": 20,
     "nominal_kw": 1000, "curve": [[3, 0], [10, 1000], [20, 1000]]},
    {"id": "bad", "hub_height_m": 100, "cut_in_ms": 12, "rated_ms": 10, "cut_out_ms": 20,
     "nominal_kw": 1000, "curve": [[3, 0], [10, 1000], [20, 1000]]},
    {"id": "partial", "hub_height_m": 100}
  ])");
  ASSERT_EQ(lib.turbines.size(), 1u);
  ASSERT_EQ(lib.rejected.size(), 2u);
  EXPECT_EQ(lib.rejected[0].id, "bad");
  EXPECT_EQ(lib.rejected[0].index, 1u);
  EXPECT_NE(lib.rejected[0].reasons.at(0).find("cut_in"), std::string::npos);
  EXPECT_EQ(lib.rejected[1].id, "partial");
  EXPECT_THROW(parse_turbine_library_json("{"), ParseError);
  EXPECT_THROW(load_turbine_library("/nonexistent/turbines.json"), ParseError);
}

TEST(Library, CsvAndJsonAgree) {
  std::istringstream csv(
      "id,hub_height_m,cut_in_ms,rated_ms,cut_out_ms,nominal_kw,curve\n"
      "a,80,3,10,20,1000,3:0 6:400 10:1000 20:1000\n");
  const auto from_csv = parse_turbine_library_csv(csv);
  const auto from_json = parse_turbine_library_json(R"([{"id": "a", "hub_height_m": 80,
      "cut_in_ms": 3, "rated_ms": 10, "cut_out_ms": 20, "nominal_kw": 1000,
      "curve": [[3, 0], [6, 400], [10, 1000], [20, 1000]]}])");
  ASSERT_EQ(from_csv.turbines.size(), 1u);
  EXPECT_EQ(from_csv.turbines, from_json.turbines);
}

TEST(Library, JsonRoundTrip) {
  const auto lib = sample_library();
  std::ostringstream out;
  write_turbine_library_json(lib.turbines, out);
  EXPECT_EQ(parse_turbine_library_json(out.str()).turbines, lib.turbines);
}

TEST(Rebin, OnGridUnchanged) {
  const PowerCurve c{{3, 0}, {3.5, 10}, {4, 30}, {4.5, 60}};
  EXPECT_EQ(rebin_curve(c), c);
}

TEST(Rebin, LinearMidpoint) {
  const auto r = rebin_curve({{3, 0}, {4, 100}});
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1], (CurvePoint{3.5, 50}));
}

TEST(Rebin, IdempotentAndReproducesKnots) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.5, 2.0);
  std::uniform_real_distribution<double> rise(0.0, 300.0);
  for (int trial = 0; trial < 50; ++trial) {
    PowerCurve c{{3.0, 0.0}};
    for (int i = 0; i < 8; ++i) {
      c.push_back({c.back().speed_ms + 0.5 * std::round(step(rng) * 2.0), c.back().power_kw + rise(rng)});
    }
    const auto once = rebin_curve(c);
    EXPECT_EQ(rebin_curve(once), once);
    for (const auto& p : c) {
      EXPECT_NEAR(interpolate(once, p.speed_ms), p.power_kw, 1e-9);
    }
  }
}

TEST(PowerAt, TableBranches) {
  const auto lib = sample_library();
  const auto& no16 = *lib.find("no16");
  EXPECT_EQ(power_at(no16, 2.0), 0.0);
  EXPECT_EQ(power_at(no16, 15.0), 3300.0);
  EXPECT_EQ(power_at(no16, 25.0), 0.0);
  EXPECT_FALSE(power_at(no16, std::optional<double>{}));
}

TEST(PowerAt, BoundariesForEveryFixtureTurbine) {
  for (const auto& t : sample_library().turbines) {
    EXPECT_EQ(power_at(t, t.cut_in_ms), 0.0) << t.id;
    EXPECT_EQ(power_at(t, t.rated_ms), t.nominal_kw) << t.id;
    EXPECT_EQ(power_at(t, std::nextafter(t.cut_out_ms, 0.0)), t.nominal_kw) << t.id;
    EXPECT_EQ(power_at(t, t.cut_out_ms), 0.0) << t.id;
  }
}

TEST(PowerAt, MonotoneAndBounded) {
  for (const auto& t : sample_library().turbines) {
    double prev = 0.0;
    for (double v = 0.0; v <= 30.0; v += 0.01) {
      const double p = power_at(t, v);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, t.nominal_kw);
      if (v >= t.cut_in_ms && v <= t.rated_ms) {
        EXPECT_GE(p, prev) << t.id << " at " << v;
      }
      prev = p;
    }
  }
}

TEST(PowerSeries, ConstantRatedDay) {
  const auto lib = sample_library();
  const auto& no16 = *lib.find("no16");
  ValueSeries wind;
  wind.start = sys_days{2018y / January / 1};
  wind.values.assign(1440, 10.0);
  const auto ps = power_series(no16, wind);
  EXPECT_EQ(ps.turbine_id, "no16");
  for (const auto& v : ps.power.values) {
    ASSERT_EQ(v, 3300.0);
  }
  wind.values.assign(1440, std::nullopt);
  for (const auto& v : power_series(no16, wind).power.values) {
    ASSERT_FALSE(v);
  }
}

TEST(PowerSeries, ElementwiseOracle) {
  const auto lib = sample_library();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> speed(0.0, 28.0);
  std::bernoulli_distribution missing(0.05);
  ValueSeries wind;
  wind.start = sys_days{2018y / March / 3};
  for (int i = 0; i < 5000; ++i) {
    wind.values.push_back(missing(rng) ? std::nullopt : std::optional<double>(speed(rng)));
  }
  for (const auto& t : lib.turbines) {
    const auto ps = power_series(t, wind);
    ASSERT_EQ(ps.power.size(), wind.size());
    EXPECT_EQ(ps.power.start, wind.start);
    for (std::size_t i = 0; i < wind.size(); ++i) {
      EXPECT_EQ(ps.power.values[i], power_at(t, wind.values[i]));
    }
  }
}

TEST(PowerSeries, MomentumUpliftCappedAtNominal) {
  const auto lib = sample_library();
  const auto& no16 = *lib.find("no16");
  ValueSeries wind;
  wind.values = {2.0, 6.0, 9.9, 12.0};
  const auto base = power_series(no16, wind);
  const auto up = power_series(no16, wind, PowerOptions{1.03});
  EXPECT_EQ(*up.power.values[0], 0.0);
  EXPECT_NEAR(*up.power.values[1], 1.03 * *base.power.values[1], 1e-9);
  EXPECT_LE(*up.power.values[2], 3300.0);
  EXPECT_EQ(*up.power.values[3], 3300.0);
  EXPECT_THROW(power_series(no16, wind, PowerOptions{0.0}), DomainError);
}

TEST(Validate, SyntheticTurbinesAreValid) {
  for (const auto& t : synth::sample_turbines()) {
    EXPECT_TRUE(validate(t).empty()) << t.id;
  }
  auto t = synth::sample_turbines().front();
  t.curve.back().power_kw = t.nominal_kw * 2;
  EXPECT_FALSE(validate(t).empty());
}
