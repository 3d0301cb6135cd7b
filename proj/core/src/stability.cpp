#include "windfeas/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "windfeas/error.hpp"

namespace windfeas::stability {

void validate(const WindowParams& params) {
  if (params.t_charge_min <= 0) {
    throw ConfigError("t_charge must be positive");
  }
  if (params.t_ov_min) {
    const double ov = *params.t_ov_min;
    if (!(ov >= 0.0 && ov < params.t_charge_min)) {
      throw ConfigError("t_ov must satisfy 0 <= t_ov < t_charge");
    }
  }
  if (!(params.sigma_max_kw > 0.0)) {
    throw ConfigError("sigma_max must be positive");
  }
}

WindowGeometry geometry(const WindowParams& params, Seconds cadence) {
  validate(params);
  const long long cad = cadence.count();
  if (cad <= 0 || 86400 % cad != 0) {
    throw ConfigError("power cadence must divide one day");
  }
  const long long t_charge_s = 60LL * params.t_charge_min;
  WindowGeometry g;
  g.length = static_cast<std::size_t>((t_charge_s + cad - 1) / cad);
  if (params.t_ov_min) {
    const double stride_s = (params.t_charge_min - *params.t_ov_min) * 60.0;
    g.stride = static_cast<std::size_t>(std::max(1.0, std::ceil(stride_s / static_cast<double>(cad) - 1e-9)));
  } else {
    g.stride = 1;
  }
  g.samples_per_day = static_cast<std::size_t>(86400 / cad);
  return g;
}

namespace {

void window_moments(const std::vector<std::optional<double>>& v, std::size_t begin,
                    std::size_t len, CandidateWindow& c) {
  double sum = 0.0;
  for (std::size_t i = begin; i < begin + len; ++i) {
    if (!v[i]) {
      c.complete = false;
      return;
    }
    sum += *v[i];
  }
  const double mean = sum / static_cast<double>(len);
  double ss = 0.0;
  for (std::size_t i = begin; i < begin + len; ++i) {
    const double d = *v[i] - mean;
    ss += d * d;
  }
  c.complete = true;
  c.mean_kw = mean;
  c.std_kw = std::sqrt(ss / static_cast<double>(len));
}

void enumerate_day(const ValueSeries& power, const DaySlice& day, const WindowGeometry& g,
                   std::vector<CandidateWindow>& out) {
  if (g.length > g.samples_per_day) {
    return;
  }
  const long long mid = day.midnight_index;
  const long long day_end = mid + static_cast<long long>(g.samples_per_day);
  const long long hi = std::min<long long>(static_cast<long long>(day.end), day_end);
  // first slot whose start is inside the series
  long long k = 0;
  if (mid < static_cast<long long>(day.begin)) {
    const long long lag = static_cast<long long>(day.begin) - mid;
    k = (lag + static_cast<long long>(g.stride) - 1) / static_cast<long long>(g.stride);
  }
  for (;; ++k) {
    const long long s = mid + k * static_cast<long long>(g.stride);
    if (s + static_cast<long long>(g.length) > hi) {
      break;
    }
    CandidateWindow c;
    c.start_index = static_cast<std::size_t>(s);
    c.slot = static_cast<std::size_t>(k);
    c.length = g.length;
    c.start = power.time_at(c.start_index);
    c.date = day.date;
    window_moments(power.values, c.start_index, g.length, c);
    out.push_back(c);
  }
}

}  // namespace

std::vector<CandidateWindow> enumerate_windows(const ValueSeries& power,
                                               const WindowParams& params) {
  const auto g = geometry(params, power.cadence);
  std::vector<CandidateWindow> out;
  for (const auto& day : split_days(power)) {
    enumerate_day(power, day, g, out);
  }
  return out;
}

double energy_floor(const WindowParams& params, const ev::ChargingProfile& profile) {
  return params.energy_floor == EnergyFloorMode::full_charge
             ? ev::energy_per_charge(profile)
             : ev::charger_energy_per_minute(profile);
}

std::vector<StableWindow> filter_stable(std::span<const CandidateWindow> candidates,
                                        const WindowParams& params,
                                        const ev::ChargingProfile& profile) {
  validate(params);
  const double floor_kwh = energy_floor(params, profile);
  std::vector<StableWindow> out;
  for (const auto& c : candidates) {
    if (!c.complete || c.std_kw > params.sigma_max_kw) {
      continue;
    }
    const double energy = c.mean_kw * params.t_charge_min / 60.0;
    if (energy < floor_kwh) {
      continue;
    }
    out.push_back(StableWindow{c.start_index, c.slot, c.start, c.date, c.length,
                               params.t_charge_min, c.mean_kw, c.std_kw, energy});
  }
  return out;
}

std::vector<StableWindow> select_nonoverlapping(std::span<const StableWindow> stable) {
  std::vector<StableWindow> out;
  for (std::size_t i = 0; i < stable.size(); ++i) {
    const auto& w = stable[i];
    if (i > 0 && w.start_index < stable[i - 1].start_index) {
      throw DomainError("stable windows must be sorted by start");
    }
    if (out.empty() || w.start_index >= out.back().end_index()) {
      out.push_back(w);
    }
  }
  return out;
}

double daily_energy(std::span<const StableWindow> selected) {
  double total = 0.0;
  for (const auto& w : selected) {
    total += w.energy_kwh;
  }
  return total;
}

long long ev_count(double energy_kwh, const ev::ChargingProfile& profile) {
  if (!(energy_kwh >= 0.0)) {
    throw DomainError("energy must be non-negative");
  }
  const double per_charge = ev::energy_per_charge(profile);
  const double sessions = energy_kwh / per_charge;
  // absorb representation error in the quotient (e.g. 70 / 35.000000000000004)
  return static_cast<long long>(std::floor(sessions * (1.0 + 1e-12)));
}

namespace {

DailyResult assemble_day(Date date, std::vector<CandidateWindow> candidates,
                         const WindowParams& params, const ev::ChargingProfile& profile) {
  DailyResult r;
  r.date = date;
  r.n_candidates = candidates.size();
  for (const auto& c : candidates) {
    r.n_complete += c.complete ? 1 : 0;
  }
  const auto stable = filter_stable(candidates, params, profile);
  r.n_stable = stable.size();
  r.selected = select_nonoverlapping(stable);
  r.total_energy_kwh = daily_energy(r.selected);
  r.ev_count = ev_count(r.total_energy_kwh, profile);
  r.candidates = std::move(candidates);
  return r;
}

}  // namespace

DailyResult analyze_day(const ValueSeries& day_power, const WindowParams& params,
                        const ev::ChargingProfile& profile) {
  const auto g = geometry(params, day_power.cadence);
  const auto days = split_days(day_power);
  if (days.size() > 1) {
    throw DomainError("analyze_day expects one calendar day, got " + std::to_string(days.size()));
  }
  if (days.empty()) {
    DailyResult r;
    r.date = local_date(day_power.start, day_power.utc_offset);
    return r;
  }
  std::vector<CandidateWindow> candidates;
  enumerate_day(day_power, days.front(), g, candidates);
  return assemble_day(days.front().date, std::move(candidates), params, profile);
}

std::vector<DailyResult> analyze(const ValueSeries& power, const WindowParams& params,
                                 const ev::ChargingProfile& profile) {
  const auto g = geometry(params, power.cadence);
  std::vector<DailyResult> out;
  for (const auto& day : split_days(power)) {
    std::vector<CandidateWindow> candidates;
    enumerate_day(power, day, g, candidates);
    out.push_back(assemble_day(day.date, std::move(candidates), params, profile));
  }
  return out;
}

}  // namespace windfeas::stability
