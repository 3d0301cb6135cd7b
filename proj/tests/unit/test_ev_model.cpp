#include <gtest/gtest.h>

#include <filesystem>

#include "windfeas/error.hpp"
#include "windfeas/ev_model.hpp"

using namespace windfeas;
using ev::ChargingProfile;

namespace {

ChargingProfile profile(double battery, double soc_start, double soc_end, double charger) {
  return ChargingProfile{"p", battery, soc_start, soc_end, charger, std::nullopt};
}

}  // namespace

TEST(ChargeTime, ReferenceProfileIs21Minutes) {
  const auto p = ev::reference_fast_charge_profile();
  EXPECT_EQ(ev::charge_time(p), 21);
  EXPECT_NEAR(ev::charge_time_exact(p), 21.0, 1e-12);
  EXPECT_DOUBLE_EQ(ev::energy_per_charge(p), 35.0);
}

TEST(ChargeTime, Examples) {
  EXPECT_EQ(ev::charge_time(profile(50, 0.3, 1.0, 100)), 21);
  EXPECT_EQ(ev::charge_time(profile(75, 0.0, 1.0, 75)), 60);
  EXPECT_EQ(ev::charge_time(profile(35, 0.0, 1.0, 100)), 21);
}

TEST(EnergyPerCharge, Examples) {
  EXPECT_DOUBLE_EQ(ev::energy_per_charge(profile(50, 0.0, 1.0, 100)), 50.0);
  EXPECT_DOUBLE_EQ(ev::energy_per_charge(profile(70, 0.5, 1.0, 100)), 35.0);
  EXPECT_DOUBLE_EQ(ev::charger_energy_per_minute(profile(50, 0.1, 0.8, 100)), 100.0 / 60.0);
}

TEST(ChargeTime, Invariants) {
  for (double b : {20.0, 50.0, 82.0, 100.0}) {
    for (double p : {7.0, 50.0, 150.0}) {
      const auto prof = profile(b, 0.2, 0.8, p);
      EXPECT_NEAR(ev::charge_time_exact(prof) * p / 60.0, ev::energy_per_charge(prof), 1e-12 * b);
      EXPECT_EQ(ev::charge_time(profile(3 * b, 0.2, 0.8, 3 * p)), ev::charge_time(prof));
    }
  }
}

TEST(Validate, RejectsBrokenProfiles) {
  EXPECT_THROW(ev::validate(profile(50, 0.8, 0.8, 100)), DomainError);
  EXPECT_THROW(ev::validate(profile(50, 0.9, 0.1, 100)), DomainError);
  EXPECT_THROW(ev::validate(profile(0, 0.1, 0.8, 100)), DomainError);
  EXPECT_THROW(ev::validate(profile(50, 0.1, 0.8, 0)), DomainError);
  EXPECT_THROW(ev::validate(profile(50, -0.1, 0.8, 100)), DomainError);
  auto p = ev::reference_fast_charge_profile();
  p.t_charge_min = 22;
  EXPECT_NO_THROW(ev::validate(p));
  p.t_charge_min = 25;
  EXPECT_THROW(ev::validate(p), DomainError);
}

TEST(Load, BundledProfile) {
  const auto p = ev::load_profile(std::filesystem::path(WINDFEAS_TEST_DATA_DIR) / "ev_tesla_model3_sr_plus.json");
  EXPECT_DOUBLE_EQ(p.battery_kwh, 50.0);
  EXPECT_DOUBLE_EQ(p.charger_kw, 100.0);
  EXPECT_EQ(ev::charge_time(p), 21);
  EXPECT_THROW(ev::profile_from_json(R"({"battery_kwh": 50})"), ConfigError);
  EXPECT_THROW(ev::load_profile("/nonexistent/ev.json"), ParseError);
}
