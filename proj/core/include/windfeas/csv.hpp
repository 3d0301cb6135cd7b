#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace windfeas::csv {

/// Splits one delimited record. Double-quoted fields may contain the
/// delimiter; a doubled quote inside quotes is a literal quote.
std::vector<std::string> split_record(std::string_view line, char delimiter);

std::string_view trim(std::string_view s);

/// Strict full-field parse of a finite double; nullopt for anything else.
std::optional<double> parse_double(std::string_view field);

/// Report formatting: 6 significant digits, "NA" for missing.
std::string format_report(double value);
std::string format_report(const std::optional<double>& value);

/// Lossless formatting (17 significant digits) for normalized series files.
std::string format_exact(double value);

}  // namespace windfeas::csv
