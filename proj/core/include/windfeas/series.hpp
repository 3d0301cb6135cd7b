#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "windfeas/time.hpp"

namespace windfeas {

/// Regular-cadence scalar series with explicit missing values. Day
/// boundaries are taken in the zone `utc_offset` ahead of UTC.
struct ValueSeries {
  Timestamp start{};
  Seconds cadence{60};
  Seconds utc_offset{0};
  std::vector<std::optional<double>> values;

  std::size_t size() const noexcept { return values.size(); }
  Timestamp time_at(std::size_t i) const { return start + cadence * static_cast<long long>(i); }

  bool operator==(const ValueSeries&) const = default;
};

/// Half-open index range [begin, end) of the samples falling on one local day.
struct DaySlice {
  Date date;
  std::size_t begin = 0;
  std::size_t end = 0;
  /// Index (possibly negative) that local midnight would have on the sample grid.
  long long midnight_index = 0;
};

/// Partitions a regular grid into local calendar days, in time order.
std::vector<DaySlice> split_days(Timestamp start, Seconds cadence, Seconds utc_offset,
                                 std::size_t size);

inline std::vector<DaySlice> split_days(const ValueSeries& s) {
  return split_days(s.start, s.cadence, s.utc_offset, s.size());
}

}  // namespace windfeas
