#include "windfeas/time.hpp"

#include <cstdio>
#include <ctime>
#include <string>

namespace windfeas {

using namespace std::chrono;

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
  return buf;
}

int YearMonth::days() const {
  const year_month_day_last last{std::chrono::year{year} / std::chrono::month{month} / std::chrono::last};
  return static_cast<int>(static_cast<unsigned>(last.day()));
}

std::string format_iso8601(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view format,
                                         Seconds utc_offset) {
  const std::string input(text);
  const std::string fmt(format);
  std::tm tm{};
  const char* end = ::strptime(input.c_str(), fmt.c_str(), &tm);
  if (end == nullptr) {
    return std::nullopt;
  }
  while (*end == ' ' || *end == '\t' || *end == '\r') {
    ++end;
  }
  if (*end != '\0') {
    return std::nullopt;
  }
  const year_month_day ymd{std::chrono::year{tm.tm_year + 1900},
                           std::chrono::month{static_cast<unsigned>(tm.tm_mon + 1)},
                           std::chrono::day{static_cast<unsigned>(tm.tm_mday)}};
  if (!ymd.ok()) {
    return std::nullopt;
  }
  const auto wall = sys_days{ymd} + hours{tm.tm_hour} + minutes{tm.tm_min} + seconds{tm.tm_sec};
  return time_point_cast<seconds>(wall - utc_offset);
}

Date local_date(Timestamp t, Seconds utc_offset) {
  return year_month_day{floor<days>(t + utc_offset)};
}

Timestamp local_midnight(Date d, Seconds utc_offset) {
  return time_point_cast<seconds>(sys_days{d} - utc_offset);
}

YearMonth year_month(Date d) {
  return YearMonth{static_cast<int>(d.year()), static_cast<unsigned>(d.month())};
}

}  // namespace windfeas
