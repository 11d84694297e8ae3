#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "airtime/types.hpp"

namespace airtime {

/// One frame handed to the MAC: every attempt until delivery or drop.
/// The channel is held over [time_us, time_us + occupancy_us).
struct LogEntry {
  Micros time_us = 0;
  NodeId node;
  Direction direction = Direction::uplink;
  int bytes = 0;
  double rate_mbps = 0.0;
  int attempts = 0;
  Micros occupancy_us = 0;
  bool delivered = false;
  FrameKind kind = FrameKind::data;

  Micros end_us() const { return time_us + occupancy_us; }
};

struct EventLog {
  std::vector<std::string> node_ids;  // indexed by NodeId::value
  std::vector<LogEntry> entries;      // nondecreasing time_us

  const std::string& id_of(NodeId node) const { return node_ids.at(node.value); }
};

inline constexpr const char* kEventLogCsvHeader =
    "time_us,node_id,direction,bytes,rate_mbps,attempts,occupancy_us,delivered";

void write_event_log_csv(std::ostream& out, const EventLog& log);
std::string to_csv(const EventLog& log);

}  // namespace airtime
