#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>

#include "airtime/types.hpp"

namespace airtime {

/// Traffic model for one station.
///
///  - saturating: an infinite backlog (fluid model)
///  - rate_limited: an application paced at limit_mbps, accumulating credit
///    continuously
///  - task: total_bytes to move, then done (task model)
///  - window: fixed-window ack-clocked transport; every data frame delivered
///    produces an ack frame in the reverse direction, and at most
///    window_packets data frames may be unacknowledged
struct SourceSpec {
  enum class Kind { saturating, rate_limited, task, window };

  Kind kind = Kind::saturating;
  double limit_mbps = 0.0;
  std::int64_t total_bytes = 0;
  int window_packets = 0;
  int ack_bytes = 40;

  static SourceSpec saturating() { return {}; }
  static SourceSpec rate_limited(double mbps) {
    SourceSpec s;
    s.kind = Kind::rate_limited;
    s.limit_mbps = mbps;
    return s;
  }
  static SourceSpec task(std::int64_t bytes) {
    SourceSpec s;
    s.kind = Kind::task;
    s.total_bytes = bytes;
    return s;
  }
  static SourceSpec window(int packets, int ack_bytes = 40) {
    SourceSpec s;
    s.kind = Kind::window;
    s.window_packets = packets;
    s.ack_bytes = ack_bytes;
    return s;
  }

  /// Throws std::invalid_argument when an invariant is violated.
  void validate(int packet_bytes) const;

  /// `saturating`, `rate_limited:<mbps>`, `task:<bytes>`, `window:<packets>`.
  std::string to_string() const;
  /// Inverse of to_string(). Throws std::invalid_argument.
  static SourceSpec parse(std::string_view text);
};

struct SourceState {
  std::int64_t bytes_sent = 0;       // handed to the MAC and not dropped
  std::int64_t bytes_remaining = 0;  // task only
  std::int64_t bytes_delivered = 0;
  std::uint64_t frames_delivered = 0;
  int in_flight = 0;           // window only
  double app_credit_bits = 0;  // rate_limited only
  bool done = false;
  std::optional<Micros> completion_time_us;
  std::uint64_t drops = 0;
};

/// One station's traffic source. Owned and driven by the simulation loop.
class Source {
 public:
  // Cap on rate-limited credit, standing in for a finite socket buffer.
  static constexpr int kRateLimitedBurstPackets = 16;

  Source(NodeId owner, Direction direction, SourceSpec spec, int packet_bytes, double rate_mbps);

  /// Next data frame, or nothing when the traffic model holds it back.
  std::optional<Frame> offer(Micros now_us);

  /// Delivery notification for a data or ack frame of this source. A window
  /// source answers a delivered data frame with the reverse-direction ack.
  std::optional<Frame> on_delivered(const Frame& frame, Micros now_us);

  /// MAC retry exhaustion or queue overflow. Data payloads are re-offered by
  /// the next offer(); a dropped ack is returned for immediate resubmission.
  std::optional<Frame> on_dropped(const Frame& frame);

  /// Earliest time offer() could produce a frame, for a caller that found
  /// nothing to send. Empty when only a delivery can unblock the source.
  std::optional<Micros> next_offer_time(Micros now_us) const;

  bool done() const { return state_.done; }
  const SourceState& state() const { return state_; }
  const SourceSpec& spec() const { return spec_; }
  Direction direction() const { return direction_; }
  int packet_bytes() const { return packet_bytes_; }

 private:
  void accrue_credit(Micros now_us);
  Frame make_frame(int payload, Micros now_us, FrameKind kind, Direction dir) const;

  NodeId owner_;
  Direction direction_;
  SourceSpec spec_;
  int packet_bytes_;
  double rate_mbps_;
  SourceState state_;
  std::deque<int> reoffer_;
  Micros credit_time_us_ = 0;
};

}  // namespace airtime
