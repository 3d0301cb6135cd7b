#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace windfeas::ev {

/// Battery and charger characteristics of one EV class.
struct ChargingProfile {
  std::string name;
  double battery_kwh = 0.0;
  double soc_start = 0.0;
  double soc_end = 1.0;
  double charger_kw = 0.0;
  /// Supplied charge duration; derived from the other fields when absent.
  std::optional<int> t_charge_min;
};

/// Throws DomainError when the profile breaks an invariant, including a
/// supplied t_charge more than one minute away from the derived value.
void validate(const ChargingProfile& profile);

/// 60 * B * (soc_end - soc_start) / P, unrounded.
double charge_time_exact(const ChargingProfile& profile);

/// Charge duration in whole minutes (nearest).
int charge_time(const ChargingProfile& profile);

/// Energy delivered per session, kWh.
double energy_per_charge(const ChargingProfile& profile);

/// Energy the charger draws in one minute, kWh.
inline double charger_energy_per_minute(const ChargingProfile& profile) {
  return profile.charger_kw / 60.0;
}

ChargingProfile load_profile(const std::filesystem::path& path);
ChargingProfile profile_from_json(const std::string& text);

/// 50 kWh pack, 10-80 % window, 100 kW average charger power.
ChargingProfile reference_fast_charge_profile();

}  // namespace windfeas::ev
