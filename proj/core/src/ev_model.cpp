#include "windfeas/ev_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "windfeas/error.hpp"

namespace windfeas::ev {

using nlohmann::json;

namespace {

void check_fields(const ChargingProfile& p) {
  if (!(p.charger_kw > 0.0) || !std::isfinite(p.charger_kw)) {
    throw DomainError("charger power must be positive (profile '" + p.name + "')");
  }
  if (!(p.battery_kwh > 0.0) || !std::isfinite(p.battery_kwh)) {
    throw DomainError("battery capacity must be positive (profile '" + p.name + "')");
  }
  if (!(p.soc_start >= 0.0 && p.soc_start < 1.0)) {
    throw DomainError("soc_start must lie in [0, 1) (profile '" + p.name + "')");
  }
  if (!(p.soc_end > 0.0 && p.soc_end <= 1.0)) {
    throw DomainError("soc_end must lie in (0, 1] (profile '" + p.name + "')");
  }
  if (!(p.soc_start < p.soc_end)) {
    throw DomainError("soc_start must be below soc_end (profile '" + p.name + "')");
  }
}

}  // namespace

double energy_per_charge(const ChargingProfile& profile) {
  // B*end - B*start keeps round SoC bounds exact (0.8 - 0.1 is not 0.7 in binary)
  return profile.battery_kwh * profile.soc_end - profile.battery_kwh * profile.soc_start;
}

double charge_time_exact(const ChargingProfile& profile) {
  check_fields(profile);
  return 60.0 * energy_per_charge(profile) / profile.charger_kw;
}

int charge_time(const ChargingProfile& profile) {
  if (profile.t_charge_min) {
    validate(profile);
    return *profile.t_charge_min;
  }
  return static_cast<int>(std::lround(charge_time_exact(profile)));
}

void validate(const ChargingProfile& profile) {
  check_fields(profile);
  if (profile.t_charge_min) {
    if (*profile.t_charge_min <= 0) {
      throw DomainError("t_charge must be positive (profile '" + profile.name + "')");
    }
    const double derived = charge_time_exact(profile);
    if (std::abs(derived - *profile.t_charge_min) > 1.0) {
      std::ostringstream os;
      os << "supplied t_charge " << *profile.t_charge_min << " min disagrees with derived "
         << derived << " min (profile '" << profile.name << "')";
      throw DomainError(os.str());
    }
  }
}

ChargingProfile profile_from_json(const std::string& text) {
  ChargingProfile p;
  try {
    const auto j = json::parse(text);
    p.name = j.value("name", std::string("ev"));
    p.battery_kwh = j.at("battery_kwh").get<double>();
    p.soc_start = j.value("soc_start", 0.0);
    p.soc_end = j.value("soc_end", 1.0);
    p.charger_kw = j.at("charger_kw").get<double>();
    if (j.contains("t_charge_min") && !j.at("t_charge_min").is_null()) {
      p.t_charge_min = j.at("t_charge_min").get<int>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid EV profile: ") + e.what());
  }
  validate(p);
  return p;
}

ChargingProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open EV profile");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return profile_from_json(buf.str());
}

ChargingProfile reference_fast_charge_profile() {
  return ChargingProfile{"tesla-model3-sr-plus", 50.0, 0.1, 0.8, 100.0, std::nullopt};
}

}  // namespace windfeas::ev
