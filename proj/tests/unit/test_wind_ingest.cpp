#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "synth/synthetic.hpp"
#include "windfeas/error.hpp"
#include "windfeas/wind_ingest.hpp"

using namespace windfeas;
using namespace windfeas::ingest;
using namespace std::chrono;

namespace {

const Timestamp kJan1 = sys_days{2018y / January / 1};

WindSeries make_series(const std::vector<std::optional<double>>& speeds, Seconds cadence = 60s,
                       Timestamp start = kJan1) {
  std::vector<WindSample> s;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    s.push_back(WindSample{start + cadence * static_cast<long long>(i), speeds[i], std::nullopt, 20.0});
  }
  return WindSeries("t", cadence, std::move(s));
}

std::vector<std::optional<double>> speeds_of(const WindSeries& w) {
  std::vector<std::optional<double>> out;
  for (const auto& s : w.samples()) {
    out.push_back(s.speed);
  }
  return out;
}

TowerSchema simple_schema() {
  TowerSchema s;
  s.timestamp_columns = {"timestamp"};
  s.speed_column = "speed";
  s.height_m = 20.0;
  s.sentinels = {"-999"};
  return s;
}

}  // namespace

TEST(Parse, ThreeRows) {
  std::istringstream in(
      "timestamp,speed\n"
      "2018-01-01T00:00:00Z,2.0\n"
      "2018-01-01T00:01:00Z,3.0\n"
      "2018-01-01T00:02:00Z,4.0\n");
  const auto w = parse_tower_stream(in, simple_schema());
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.cadence(), 60s);
  EXPECT_EQ(w.samples()[0].time, kJan1);
  EXPECT_DOUBLE_EQ(*w.samples()[2].speed, 4.0);
  EXPECT_DOUBLE_EQ(w.samples()[1].height_m, 20.0);
}

TEST(Parse, SentinelIsMissing) {
  std::istringstream in(
      "timestamp,speed\n"
      "2018-01-01T00:00:00Z,2.0\n"
      "2018-01-01T00:01:00Z,-999\n"
      "2018-01-01T00:02:00Z,fast\n"
      "2018-01-01T00:03:00Z,4.0\n");
  const auto w = parse_tower_stream(in, simple_schema());
  EXPECT_FALSE(w.samples()[1].speed);
  EXPECT_FALSE(w.samples()[2].speed);
  EXPECT_EQ(w.missing_count(), 2u);
}

TEST(Parse, ShuffledRowsEqualSortedRows) {
  const std::string header = "timestamp,speed\n";
  const std::vector<std::string> rows = {"2018-01-01T00:00:00Z,2.0\n", "2018-01-01T00:01:00Z,3.0\n",
                                         "2018-01-01T00:02:00Z,-999\n", "2018-01-01T00:03:00Z,5.5\n",
                                         "2018-01-01T00:04:00Z,1.0\n"};
  std::istringstream sorted(header + rows[0] + rows[1] + rows[2] + rows[3] + rows[4]);
  std::istringstream shuffled(header + rows[3] + rows[0] + rows[4] + rows[2] + rows[1]);
  EXPECT_EQ(parse_tower_stream(sorted, simple_schema()), parse_tower_stream(shuffled, simple_schema()));
}

TEST(Parse, AbsentRowsBecomeMissingSamples) {
  std::istringstream in(
      "timestamp,speed\n"
      "2018-01-01T00:00:00Z,2.0\n"
      "2018-01-01T00:01:00Z,3.0\n"
      "2018-01-01T00:04:00Z,4.0\n");
  const auto w = parse_tower_stream(in, simple_schema());
  ASSERT_EQ(w.size(), 5u);
  EXPECT_FALSE(w.samples()[2].speed);
  EXPECT_FALSE(w.samples()[3].speed);
}

TEST(Parse, MalformedInputReportsLine) {
  std::istringstream bad_header("time,speed\n2018-01-01T00:00:00Z,2.0\n");
  EXPECT_THROW(parse_tower_stream(bad_header, simple_schema()), ParseError);

  std::istringstream bad_time(
      "timestamp,speed\n"
      "2018-01-01T00:00:00Z,2.0\n"
      "yesterday,3.0\n");
  try {
    parse_tower_stream(bad_time, simple_schema());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }

  std::istringstream duplicate(
      "timestamp,speed\n"
      "2018-01-01T00:00:00Z,2.0\n"
      "2018-01-01T00:00:00Z,3.0\n");
  EXPECT_THROW(parse_tower_stream(duplicate, simple_schema()), ParseError);
}

TEST(Parse, MissingFileThrows) {
  EXPECT_THROW(parse_tower_file("/nonexistent/tower.csv", simple_schema()), ParseError);
}

TEST(Parse, LocalTimestampsAndSplitColumns) {
  auto schema = schema_from_json(R"({
    "site_id": "m2", "delimiter": ",", "skip_lines": 1,
    "timestamp_columns": ["DATE", "MST"], "timestamp_format": "%m/%d/%Y %H:%M",
    "utc_offset_minutes": -420, "speed_column": "Speed", "direction_column": "Dir",
    "height_m": 80, "sentinels": ["-99999"]
  })");
  std::istringstream in(
      "preamble line\n"
      "DATE,MST,Speed,Dir\n"
      "01/01/2018,00:00,5.0,90\n"
      "01/01/2018,00:01,-99999,91\n");
  const auto w = parse_tower_stream(in, schema);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w.samples()[0].time, kJan1 + 7h);
  EXPECT_EQ(w.utc_offset(), -420min);
  EXPECT_DOUBLE_EQ(*w.samples()[0].direction, 90.0);
  EXPECT_FALSE(w.samples()[1].speed);
}

TEST(Parse, SchemaValidation) {
  EXPECT_THROW(schema_from_json(R"({"timestamp_columns": ["t"], "height_m": 10})"), ConfigError);
  EXPECT_THROW(schema_from_json(R"({"speed_column": "s", "timestamp_columns": ["t"]})"), ConfigError);
  EXPECT_THROW(schema_from_json("not json"), ConfigError);
}

TEST(Parse, RoundTripThroughNormalizedFiles) {
  synth::SyntheticOptions o;
  o.days = 3;
  o.seed = 11;
  const auto raw = synth::synthetic_series(o);
  const auto w = impute_short_gaps(raw);
  const std::filesystem::path dir = WINDFEAS_TEST_TMP_DIR;
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "series.csv");
    write_series_csv(w, csv);
    std::ofstream man(dir / "gaps.json");
    write_gap_manifest(w, man);
  }
  const auto back = load_normalized(dir / "series.csv", dir / "gaps.json");
  EXPECT_EQ(back, w);

  std::ostringstream tower;
  synth::write_tower_csv(raw, tower);
  std::istringstream tower_in(tower.str());
  auto schema = schema_from_json(synth::tower_schema_json(raw.site_id(), 20.0));
  EXPECT_EQ(parse_tower_stream(tower_in, schema), raw);
}

TEST(Series, ConstructorInvariants) {
  std::vector<WindSample> bad{{kJan1, 1.0, std::nullopt, 10.0}, {kJan1 + 120s, 1.0, std::nullopt, 10.0}};
  EXPECT_THROW(WindSeries("x", 60s, bad), DomainError);
  std::vector<WindSample> neg{{kJan1, -1.0, std::nullopt, 10.0}};
  EXPECT_THROW(WindSeries("x", 60s, neg), DomainError);
  std::vector<WindSample> dir{{kJan1, 1.0, 360.0, 10.0}};
  EXPECT_THROW(WindSeries("x", 60s, dir), DomainError);
  std::vector<WindSample> in_gap{{kJan1, 1.0, std::nullopt, 10.0}};
  EXPECT_THROW(WindSeries("x", 60s, in_gap, {GapRange{kJan1, kJan1 + 60s}}), DomainError);
}

TEST(Impute, SingleInteriorMissing) {
  const auto out = impute_short_gaps(make_series({2.0, 3.0, std::nullopt, 5.0, 6.0}));
  const std::vector<std::optional<double>> want{2.0, 3.0, 4.0, 5.0, 6.0};
  EXPECT_EQ(speeds_of(out), want);
}

TEST(Impute, HeadMissing) {
  const auto out = impute_short_gaps(make_series({std::nullopt, 3.0, 3.0}));
  const std::vector<std::optional<double>> want{3.0, 3.0, 3.0};
  EXPECT_EQ(speeds_of(out), want);
}

TEST(Impute, LongRunBecomesGap) {
  std::vector<std::optional<double>> v(20, 4.0);
  for (std::size_t i = 5; i < 12; ++i) {
    v[i].reset();
  }
  const auto out = impute_short_gaps(make_series(v), 5);
  ASSERT_EQ(out.gaps().size(), 1u);
  EXPECT_EQ(out.gaps()[0].start, kJan1 + 5min);
  EXPECT_EQ(out.gaps()[0].end, kJan1 + 12min);
  EXPECT_EQ(out.missing_count(), 7u);
  EXPECT_THROW(impute_short_gaps(make_series({std::nullopt, std::nullopt})), AllMissingError);
}

TEST(Impute, MatchesScalarReferenceOnIsolatedMissing) {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution drop(0.01);
  std::uniform_real_distribution<double> speed(0.0, 15.0);
  std::vector<std::optional<double>> v(10000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = speed(rng);
    if (i >= 1 && i + 1 < v.size() && drop(rng) && v[i - 1]) {
      v[i].reset();
    }
  }
  const auto out = impute_short_gaps(make_series(v));
  EXPECT_EQ(out.missing_count(), 0u);
  EXPECT_TRUE(out.gaps().empty());
  const auto ref = oracle::impute_left_to_right(v);
  const auto got = speeds_of(out);
  for (std::size_t i = 0; i < v.size(); ++i) {
    ASSERT_TRUE(got[i]);
    ASSERT_DOUBLE_EQ(*got[i], *ref[i]) << "index " << i;
  }
}

TEST(Impute, Idempotent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const auto v = oracle::random_speeds(rng, 3000, 0.02, 12);
    const auto once = impute_short_gaps(make_series(v));
    EXPECT_EQ(impute_short_gaps(once), once);
  }
}

TEST(Gaps, FullyPopulatedHasNone) {
  EXPECT_TRUE(detect_long_gaps(make_series(std::vector<std::optional<double>>(500, 3.0)), 60min).empty());
}

TEST(Gaps, OneHundredFiftyMinuteHole) {
  std::vector<std::optional<double>> v(400, 3.0);
  for (std::size_t i = 100; i < 250; ++i) {
    v[i].reset();
  }
  const auto gaps = detect_long_gaps(make_series(v), 60min);
  ASSERT_EQ(gaps.size(), 1u);
  EXPECT_EQ(gaps[0].duration(), 150min);
  EXPECT_EQ(gaps[0].start, kJan1 + 100min);
}

TEST(Gaps, TwoTwoDayHoles) {
  std::vector<std::optional<double>> v(10 * 1440, 3.0);
  for (std::size_t i = 1440; i < 3 * 1440; ++i) {
    v[i].reset();
  }
  for (std::size_t i = 6 * 1440 + 30; i < 8 * 1440 + 30; ++i) {
    v[i].reset();
  }
  const auto gaps = detect_long_gaps(make_series(v), 60min);
  ASSERT_EQ(gaps.size(), 2u);
  EXPECT_EQ(gaps[0].duration(), 2880min);
  EXPECT_EQ(gaps[1].duration(), 2880min);
}

TEST(Resample, ThreeMinuteMeans) {
  const auto out = resample_average(make_series({2, 4, 6, 8, 10, 12}), 3min);
  const std::vector<std::optional<double>> want{4.0, 10.0};
  EXPECT_EQ(speeds_of(out), want);
  EXPECT_EQ(out.cadence(), 180s);
}

TEST(Resample, ConstantPreserved) {
  const auto out = resample_average(make_series({3, 3, 3}), 3min);
  const std::vector<std::optional<double>> want{3.0};
  EXPECT_EQ(speeds_of(out), want);
}

TEST(Resample, WindowTouchingGapIsMissing) {
  std::vector<std::optional<double>> v(30, 5.0);
  for (std::size_t i = 10; i < 17; ++i) {
    v[i].reset();
  }
  const auto w = impute_short_gaps(make_series(v), 5);
  ASSERT_EQ(w.gaps().size(), 1u);
  const auto out = speeds_of(resample_average(w, 3min));
  ASSERT_EQ(out.size(), 10u);
  EXPECT_TRUE(out[2]);
  EXPECT_FALSE(out[3]);
  EXPECT_FALSE(out[4]);
  EXPECT_FALSE(out[5]);
  EXPECT_TRUE(out[6]);
}

TEST(Resample, AlignedToLocalMidnight) {
  std::vector<std::optional<double>> v{1, 2, 3, 4, 5, 6, 7};
  const auto out = speeds_of(resample_average(make_series(v, 60s, kJan1 + 1min), 3min));
  // [00:00, 00:03) lacks 00:00 and [00:06, 00:09) lacks 00:08
  ASSERT_EQ(out.size(), 3u);
  EXPECT_FALSE(out[0]);
  EXPECT_DOUBLE_EQ(*out[1], 4.0);
  EXPECT_FALSE(out[2]);
  EXPECT_THROW(resample_average(make_series(v), 150s), ConfigError);
}

TEST(Resample, CircularDirectionMean) {
  std::vector<WindSample> s;
  s.push_back({kJan1, 1.0, 350.0, 10.0});
  s.push_back({kJan1 + 60s, 1.0, 10.0, 10.0});
  const auto out = resample_average(WindSeries("d", 60s, s), 2min);
  ASSERT_TRUE(out.samples()[0].direction);
  const double d = *out.samples()[0].direction;
  EXPECT_NEAR(std::min(d, 360.0 - d), 0.0, 1e-9);
}

TEST(Resample, MeanPreservingAndGapClean) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const auto v = oracle::random_speeds(rng, 1440, 0.01, 15);
    const auto w = impute_short_gaps(make_series(v));
    const auto out = resample_average(w, 3min);
    double raw_sum = 0.0;
    double avg_sum = 0.0;
    std::size_t n_windows = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto& o = out.samples()[k];
      if (!o.speed) {
        continue;
      }
      EXPECT_FALSE(w.in_gap(o.time));
      for (std::size_t i = 3 * k; i < 3 * k + 3; ++i) {
        ASSERT_TRUE(w.samples()[i].speed);
        raw_sum += *w.samples()[i].speed;
      }
      avg_sum += *o.speed;
      ++n_windows;
    }
    ASSERT_GT(n_windows, 0u);
    EXPECT_NEAR(avg_sum / n_windows, raw_sum / (3.0 * n_windows), 1e-12 * raw_sum / (3.0 * n_windows));
  }
}

TEST(MissingByMonth, CompleteMonthIsZero) {
  const auto f = missing_fraction_by_month(make_series(std::vector<std::optional<double>>(44640, 2.0)));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.begin()->first, (YearMonth{2018, 1}));
  EXPECT_DOUBLE_EQ(f.begin()->second, 0.0);
}

TEST(MissingByMonth, TenPercentJanuary) {
  std::vector<std::optional<double>> v(44640, 2.0);
  for (std::size_t i = 0; i < 4464; ++i) {
    v[10 * i + 3].reset();
  }
  const auto f = missing_fraction_by_month(make_series(v));
  EXPECT_DOUBLE_EQ(f.at(YearMonth{2018, 1}), 0.10);
}

TEST(MissingByMonth, AnnualTwelvePercentFixture) {
  std::vector<std::optional<double>> v(365 * 1440, 2.0);
  const std::size_t target = static_cast<std::size_t>(0.12 * v.size());
  for (std::size_t i = 0; i < target; ++i) {
    v[(i * 97) % v.size()].reset();
  }
  const auto w = make_series(v);
  EXPECT_NEAR(missing_fraction(w), 0.12, 0.005);
  double total = 0.0;
  for (const auto& [ym, frac] : missing_fraction_by_month(w)) {
    total += frac * ym.days();
  }
  EXPECT_NEAR(total / 365.0, 0.12, 0.005);
}

TEST(MissingByMonth, UncoveredTimeCountsAsMissing) {
  const auto f = missing_fraction_by_month(make_series(std::vector<std::optional<double>>(1440, 2.0)));
  EXPECT_NEAR(f.at(YearMonth{2018, 1}), 30.0 / 31.0, 1e-12);
}
