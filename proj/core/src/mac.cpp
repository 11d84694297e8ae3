#include "airtime/mac.hpp"

#include <cmath>
#include <stdexcept>

namespace airtime {

void TimingConstants::validate() const {
  if (slot_us <= 0 || sifs_us <= 0 || difs_us <= 0 || plcp_us <= 0)
    throw std::invalid_argument("timing intervals must be positive");
  if (ack_bytes <= 0 || !(ack_rate_mbps > 0.0)) throw std::invalid_argument("ack size and rate must be positive");
  if (cw_min_slots < 0) throw std::invalid_argument("cw_min_slots must be >= 0");
  if (retry_limit < 1) throw std::invalid_argument("retry_limit must be >= 1");
}

double single_attempt_time(int payload_bytes, double rate_mbps, const TimingConstants& t) {
  const double data_us = payload_bytes * 8.0 / rate_mbps;
  const double ack_us = t.ack_bytes * 8.0 / t.ack_rate_mbps;
  return static_cast<double>(t.difs_us + t.plcp_us) + data_us + static_cast<double>(t.sifs_us + t.plcp_us) +
         ack_us;
}

Micros attempt_airtime(int payload_bytes, double rate_mbps, const TimingConstants& timing) {
  // Guard against 1646.9999999 style representation noise before ceil.
  return static_cast<Micros>(std::ceil(single_attempt_time(payload_bytes, rate_mbps, timing) - 1e-9));
}

Micros backoff(Rng& rng, const TimingConstants& timing) {
  if (timing.cw_min_slots == 0) return 0;
  const auto slots = rng.uniform_below(static_cast<std::uint64_t>(timing.cw_min_slots) + 1);
  return static_cast<Micros>(slots) * timing.slot_us;
}

double mean_backoff(const TimingConstants& timing) {
  return timing.cw_min_slots * static_cast<double>(timing.slot_us) / 2.0;
}

NodeId contend(std::span<const NodeId> backlogged, Rng& rng) {
  if (backlogged.empty()) throw std::invalid_argument("contend needs at least one contender");
  if (backlogged.size() == 1) return backlogged.front();
  return backlogged[rng.uniform_below(backlogged.size())];
}

TransferOutcome transmit(const Frame& frame, double loss_rate, const TimingConstants& timing, Rng& rng,
                         Micros start_us) {
  if (!(loss_rate >= 0.0 && loss_rate < 1.0)) throw std::invalid_argument("loss_rate must lie in [0, 1)");
  const Micros airtime = attempt_airtime(frame.payload_bytes, frame.rate_mbps, timing);

  TransferOutcome out;
  while (out.attempts < timing.retry_limit) {
    const Micros cost = backoff(rng, timing) + airtime;
    if (out.attempts == 0) out.first_attempt_us = cost;
    out.occupancy_us += cost;
    ++out.attempts;
    if (loss_rate == 0.0 || !rng.bernoulli(loss_rate)) {
      out.delivered = true;
      break;
    }
  }
  out.completion_time_us = start_us + out.occupancy_us;
  return out;
}

}  // namespace airtime
