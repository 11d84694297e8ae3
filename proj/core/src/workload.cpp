#include "airtime/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "airtime/csv.hpp"

namespace airtime {

void SourceSpec::validate(int packet_bytes) const {
  switch (kind) {
    case Kind::saturating:
      break;
    case Kind::rate_limited:
      if (!(limit_mbps > 0.0)) throw std::invalid_argument("rate_limited: limit must be > 0");
      break;
    case Kind::task:
      if (total_bytes < packet_bytes)
        throw std::invalid_argument("task: total bytes must be >= packet size");
      break;
    case Kind::window:
      if (window_packets < 1) throw std::invalid_argument("window: need at least one packet");
      if (ack_bytes < 1) throw std::invalid_argument("window: ack bytes must be >= 1");
      break;
  }
}

std::string SourceSpec::to_string() const {
  switch (kind) {
    case Kind::saturating:
      return "saturating";
    case Kind::rate_limited:
      return "rate_limited:" + format_decimal(limit_mbps);
    case Kind::task:
      return "task:" + std::to_string(total_bytes);
    case Kind::window:
      return "window:" + std::to_string(window_packets);
  }
  return {};
}

SourceSpec SourceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  if (name == "saturating" && !has_arg) return saturating();
  if (name == "rate_limited" && has_arg) return rate_limited(parse_double(arg));
  if (name == "task" && has_arg) return task(parse_int64(arg));
  if (name == "window" && has_arg) {
    const auto w = parse_int64(arg);
    if (w < 1 || w > 1'000'000) throw std::invalid_argument("window size out of range");
    return window(static_cast<int>(w));
  }
  throw std::invalid_argument("unknown source '" + std::string(text) +
                              "' (expected saturating | rate_limited:<mbps> | task:<bytes> | "
                              "window:<packets>)");
}

Source::Source(NodeId owner, Direction direction, SourceSpec spec, int packet_bytes, double rate_mbps)
    : owner_(owner), direction_(direction), spec_(spec), packet_bytes_(packet_bytes), rate_mbps_(rate_mbps) {
  spec_.validate(packet_bytes_);
  if (spec_.kind == SourceSpec::Kind::task) state_.bytes_remaining = spec_.total_bytes;
}

Frame Source::make_frame(int payload, Micros now_us, FrameKind kind, Direction dir) const {
  return Frame{owner_, dir, payload, rate_mbps_, now_us, kind};
}

void Source::accrue_credit(Micros now_us) {
  if (now_us <= credit_time_us_) return;
  const double cap = static_cast<double>(kRateLimitedBurstPackets) * packet_bytes_ * 8.0;
  // Mbps == bits per microsecond.
  state_.app_credit_bits =
      std::min(cap, state_.app_credit_bits + static_cast<double>(now_us - credit_time_us_) * spec_.limit_mbps);
  credit_time_us_ = now_us;
}

std::optional<Frame> Source::offer(Micros now_us) {
  if (state_.done) return std::nullopt;

  using Kind = SourceSpec::Kind;
  if (!reoffer_.empty() && (spec_.kind != Kind::window || state_.in_flight < spec_.window_packets)) {
    const int payload = reoffer_.front();
    reoffer_.pop_front();
    state_.bytes_sent += payload;
    if (spec_.kind == Kind::window) ++state_.in_flight;
    return make_frame(payload, now_us, FrameKind::data, direction_);
  }

  switch (spec_.kind) {
    case Kind::saturating:
      break;
    case Kind::rate_limited: {
      accrue_credit(now_us);
      const double bits = packet_bytes_ * 8.0;
      if (state_.app_credit_bits < bits) return std::nullopt;
      state_.app_credit_bits -= bits;
      break;
    }
    case Kind::task: {
      if (state_.bytes_remaining <= 0) return std::nullopt;
      const int payload = static_cast<int>(std::min<std::int64_t>(packet_bytes_, state_.bytes_remaining));
      state_.bytes_remaining -= payload;
      state_.bytes_sent += payload;
      return make_frame(payload, now_us, FrameKind::data, direction_);
    }
    case Kind::window:
      if (state_.in_flight >= spec_.window_packets) return std::nullopt;
      ++state_.in_flight;
      break;
  }
  state_.bytes_sent += packet_bytes_;
  return make_frame(packet_bytes_, now_us, FrameKind::data, direction_);
}

std::optional<Frame> Source::on_delivered(const Frame& frame, Micros now_us) {
  if (frame.kind == FrameKind::transport_ack) {
    if (state_.in_flight > 0) --state_.in_flight;
    return std::nullopt;
  }
  state_.bytes_delivered += frame.payload_bytes;
  ++state_.frames_delivered;
  if (spec_.kind == SourceSpec::Kind::task && state_.bytes_delivered >= spec_.total_bytes) {
    state_.done = true;
    state_.completion_time_us = now_us;
  }
  if (spec_.kind == SourceSpec::Kind::window) {
    return make_frame(spec_.ack_bytes, now_us, FrameKind::transport_ack, reverse(direction_));
  }
  return std::nullopt;
}

std::optional<Frame> Source::on_dropped(const Frame& frame) {
  ++state_.drops;
  if (frame.kind == FrameKind::transport_ack) return frame;

  state_.bytes_sent -= frame.payload_bytes;
  switch (spec_.kind) {
    case SourceSpec::Kind::saturating:
      break;  // an identical frame is always on offer anyway
    case SourceSpec::Kind::task:
      state_.bytes_remaining += frame.payload_bytes;
      break;
    case SourceSpec::Kind::window:
      if (state_.in_flight > 0) --state_.in_flight;
      reoffer_.push_back(frame.payload_bytes);
      break;
    case SourceSpec::Kind::rate_limited:
      reoffer_.push_back(frame.payload_bytes);
      break;
  }
  return std::nullopt;
}

std::optional<Micros> Source::next_offer_time(Micros now_us) const {
  if (state_.done) return std::nullopt;
  using Kind = SourceSpec::Kind;
  const bool window_open = spec_.kind != Kind::window || state_.in_flight < spec_.window_packets;
  if (!reoffer_.empty() && window_open) return now_us;
  switch (spec_.kind) {
    case Kind::saturating:
      return now_us;
    case Kind::task:
      if (state_.bytes_remaining > 0) return now_us;
      return std::nullopt;
    case Kind::window:
      if (window_open) return now_us;
      return std::nullopt;
    case Kind::rate_limited: {
      const double cap = static_cast<double>(kRateLimitedBurstPackets) * packet_bytes_ * 8.0;
      const double credit = std::min(
          cap, state_.app_credit_bits + static_cast<double>(std::max<Micros>(0, now_us - credit_time_us_)) *
                                            spec_.limit_mbps);
      const double need = packet_bytes_ * 8.0 - credit;
      if (need <= 0.0) return now_us;
      return now_us + static_cast<Micros>(std::ceil(need / spec_.limit_mbps));
    }
  }
  return std::nullopt;
}

}  // namespace airtime
