#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "windfeas/ev_model.hpp"
#include "windfeas/series.hpp"
#include "windfeas/turbine.hpp"

namespace windfeas::stability {

enum class EnergyFloorMode {
  full_charge,     // window energy must cover one whole charging session
  partial_charge,  // window energy must cover one minute of charger draw
};

struct WindowParams {
  int t_charge_min = 21;
  /// Overlap of consecutive candidates. Unset means a stride of one sample.
  std::optional<double> t_ov_min;
  double sigma_max_kw = 0.1;
  EnergyFloorMode energy_floor = EnergyFloorMode::full_charge;
};

void validate(const WindowParams& params);

/// Window length and stride in samples for a given cadence. A charge time
/// that is not a whole number of samples is rounded up so the window still
/// spans the full session.
struct WindowGeometry {
  std::size_t length = 0;
  std::size_t stride = 0;
  std::size_t samples_per_day = 0;
  /// Candidate slots in a complete day.
  std::size_t slots_per_day() const {
    return samples_per_day < length ? 0 : (samples_per_day - length) / stride + 1;
  }
};

WindowGeometry geometry(const WindowParams& params, Seconds cadence);

struct CandidateWindow {
  std::size_t start_index = 0;  // into the analysed series
  std::size_t slot = 0;         // position on the day's stride grid from local midnight
  std::size_t length = 0;       // samples
  Timestamp start{};
  Date date{};
  bool complete = false;  // no missing sample inside
  double mean_kw = 0.0;   // meaningful only when complete
  double std_kw = 0.0;    // population standard deviation
};

struct StableWindow {
  std::size_t start_index = 0;
  std::size_t slot = 0;
  Timestamp start{};
  Date date{};
  std::size_t length = 0;  // samples
  int t_charge_min = 0;
  double mean_kw = 0.0;
  double std_kw = 0.0;
  double energy_kwh = 0.0;  // mean_kw * t_charge / 60

  std::size_t end_index() const { return start_index + length; }
  bool operator==(const StableWindow&) const = default;
};

/// Sliding candidates of one charge duration, stepped by (t_charge - t_ov)
/// from local midnight and never crossing it. Only windows that lie wholly
/// inside the series are emitted; those holding a missing sample are
/// flagged incomplete. Returns nothing if the window exceeds a day.
std::vector<CandidateWindow> enumerate_windows(const ValueSeries& power, const WindowParams& params);

/// Minimum window energy (kWh) for the configured floor mode.
double energy_floor(const WindowParams& params, const ev::ChargingProfile& profile);

/// Keeps complete candidates whose power spread is at most sigma_max and
/// whose energy reaches the floor.
std::vector<StableWindow> filter_stable(std::span<const CandidateWindow> candidates,
                                        const WindowParams& params,
                                        const ev::ChargingProfile& profile);

/// Earliest-start greedy scan: a window is taken iff it starts at or after
/// the end of the last window taken. Input must be sorted by start.
std::vector<StableWindow> select_nonoverlapping(std::span<const StableWindow> stable);

double daily_energy(std::span<const StableWindow> selected);

/// Whole charging sessions covered by `energy_kwh`.
long long ev_count(double energy_kwh, const ev::ChargingProfile& profile);

struct DailyResult {
  Date date{};
  std::size_t n_candidates = 0;
  std::size_t n_complete = 0;
  std::size_t n_stable = 0;
  std::vector<CandidateWindow> candidates;
  std::vector<StableWindow> selected;
  double total_energy_kwh = 0.0;
  long long ev_count = 0;

  std::size_t n_windows() const { return selected.size(); }
};

/// enumerate -> filter -> select -> energy -> EV count for one local day.
/// Throws DomainError if `day_power` spans more than one day.
DailyResult analyze_day(const ValueSeries& day_power, const WindowParams& params,
                        const ev::ChargingProfile& profile);

/// analyze_day over every local day of `power`, in date order.
std::vector<DailyResult> analyze(const ValueSeries& power, const WindowParams& params,
                                 const ev::ChargingProfile& profile);

}  // namespace windfeas::stability
