#include "windfeas/series.hpp"

#include <algorithm>

namespace windfeas {

namespace {

long long ceil_div(long long a, long long b) {
  // b > 0
  const long long q = a / b;
  return (a % b != 0 && a > 0) ? q + 1 : q;
}

}  // namespace

std::vector<DaySlice> split_days(Timestamp start, Seconds cadence, Seconds utc_offset,
                                 std::size_t size) {
  std::vector<DaySlice> days;
  const long long step = cadence.count();
  std::size_t i = 0;
  while (i < size) {
    const Timestamp t = start + cadence * static_cast<long long>(i);
    const Date date = local_date(t, utc_offset);
    const Timestamp midnight = local_midnight(date, utc_offset);
    const Timestamp next = local_midnight(Date{std::chrono::sys_days{date} + std::chrono::days{1}},
                                          utc_offset);
    const long long end_index = ceil_div((next - start).count(), step);
    const std::size_t end = std::min<std::size_t>(size, static_cast<std::size_t>(end_index));
    days.push_back(DaySlice{date, i, end, ceil_div((midnight - start).count(), step)});
    i = end;
  }
  return days;
}

}  // namespace windfeas
