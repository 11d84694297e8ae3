#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "airtime/analytic.hpp"

namespace airtime {

// CSV: header `rate_mbps,packet_bytes,gamma_mbps`, one row per entry.
inline constexpr const char* kBaselineCsvHeader = "rate_mbps,packet_bytes,gamma_mbps";

std::string to_csv(const BaselineTable& table);
BaselineTable read_baseline_csv(std::istream& in, const std::string& origin);
BaselineTable load_baseline_csv(const std::filesystem::path& path);

}  // namespace airtime
