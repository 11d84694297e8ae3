#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace airtime {

// Strict whole-string numeric parsing; throw std::invalid_argument.
double parse_double(std::string_view text);
std::int64_t parse_int64(std::string_view text);
std::uint64_t parse_uint64(std::string_view text);

std::string_view trim(std::string_view text);

/// Splits one line on commas. No quoting: every format in this project is
/// plain numeric/identifier columns.
std::vector<std::string_view> split_csv_line(std::string_view line);

/// Shortest decimal that round-trips (e.g. "5.5", "11").
std::string format_decimal(double value);
/// Fixed-point with the given number of digits after the point.
std::string format_fixed(double value, int digits);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace airtime
