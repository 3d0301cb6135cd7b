#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace windfeas {

using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;
using Date = std::chrono::year_month_day;

/// Calendar month key used for monthly aggregation.
struct YearMonth {
  int year = 1970;
  unsigned month = 1;

  auto operator<=>(const YearMonth&) const = default;

  std::string to_string() const;  // "YYYY-MM"
  int days() const;
};

/// "2018-01-01T00:00:00Z"
std::string format_iso8601(Timestamp t);

/// "2018-01-01"
std::string format_date(Date d);

/// Parses `text` with a strptime-style `format`, interpreting the fields as
/// wall-clock time `utc_offset` ahead of UTC. Returns nullopt on mismatch.
std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view format,
                                         Seconds utc_offset = Seconds{0});

/// Calendar day of `t` in a zone `utc_offset` ahead of UTC.
Date local_date(Timestamp t, Seconds utc_offset);

/// UTC instant of local midnight starting `d`.
Timestamp local_midnight(Date d, Seconds utc_offset);

YearMonth year_month(Date d);

}  // namespace windfeas
