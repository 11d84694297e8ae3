#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "airtime/event_log.hpp"

namespace airtime {

/// One delivered frame as seen by a sniffer at the AP.
struct TraceRecord {
  Micros timestamp_us = 0;
  std::string node_id;
  Direction direction = Direction::uplink;
  std::int64_t bytes = 0;
  double rate_mbps = 0.0;
  int retries = 0;
};

// The retries column may be omitted on input.
inline constexpr const char* kTraceCsvHeader = "timestamp_us,node_id,direction,bytes,rate_mbps,retries";

std::vector<TraceRecord> read_trace_csv(std::istream& in, const std::string& origin);
std::vector<TraceRecord> load_trace_csv(const std::filesystem::path& path);
std::string to_csv(std::span<const TraceRecord> records);

/// Delivered data frames of a simulation, stamped at delivery time.
std::vector<TraceRecord> to_trace(const EventLog& log);

/// Fraction of bytes carried at each rate. Throws EmptyTrace.
std::map<double, double> rate_distribution(std::span<const TraceRecord> records);

struct Interval {
  Micros start_us = 0;
  Micros end_us = 0;
  double throughput_mbps = 0.0;
};

/// Aligned windows [k*w, (k+1)*w) whose delivered throughput reaches
/// threshold_mbps.
std::vector<Interval> busy_intervals(std::span<const TraceRecord> records, double threshold_mbps = 4.0,
                                     Micros window_us = 1'000'000);

struct HeaviestUser {
  Interval interval;
  std::string node_id;
  double fraction = 0.0;  // heaviest node's bytes / all bytes in the interval
  std::size_t active_users = 0;
};

std::vector<HeaviestUser> heaviest_user_fraction(std::span<const TraceRecord> records,
                                                 std::span<const Interval> intervals);

std::string rate_distribution_csv(const std::map<double, double>& dist);
std::string busy_intervals_csv(std::span<const Interval> intervals);
std::string heaviest_user_csv(std::span<const HeaviestUser> rows);

}  // namespace airtime
