#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

namespace airtime {

// Simulation clock and channel-time unit.
using Micros = std::int64_t;

struct NodeId {
  std::uint32_t value = 0;
  friend auto operator<=>(NodeId, NodeId) = default;
};

enum class Direction { uplink, downlink };
enum class FrameKind { data, transport_ack };

constexpr std::string_view to_string(Direction d) {
  return d == Direction::uplink ? "uplink" : "downlink";
}

constexpr Direction reverse(Direction d) {
  return d == Direction::uplink ? Direction::downlink : Direction::uplink;
}

struct Frame {
  NodeId owner;
  Direction direction = Direction::uplink;
  int payload_bytes = 0;
  double rate_mbps = 0.0;
  Micros enqueue_time_us = 0;
  FrameKind kind = FrameKind::data;
};

// 802.11b DSSS/CCK rate set.
inline constexpr double kSupportedRates[] = {1.0, 2.0, 5.5, 11.0};

constexpr bool is_supported_rate(double rate_mbps) {
  for (double r : kSupportedRates) {
    if (r == rate_mbps) return true;
  }
  return false;
}

}  // namespace airtime
