#pragma once

#include <span>

#include "airtime/rng.hpp"
#include "airtime/types.hpp"

namespace airtime {

/// 802.11b DSSS defaults: long preamble, 14-byte ACK at 1 Mbps, CWmin 31.
struct TimingConstants {
  Micros slot_us = 20;
  Micros sifs_us = 10;
  Micros difs_us = 50;
  Micros plcp_us = 192;  // preamble + PLCP header
  int ack_bytes = 14;
  double ack_rate_mbps = 1.0;
  int cw_min_slots = 31;
  int retry_limit = 7;

  /// Throws std::invalid_argument. cw_min_slots may be 0.
  void validate() const;
};

/// One attempt: DIFS + PLCP + payload + SIFS + PLCP + MAC ack, in us.
double single_attempt_time(int payload_bytes, double rate_mbps, const TimingConstants& timing);

/// single_attempt_time rounded up to the simulator's 1 us clock.
Micros attempt_airtime(int payload_bytes, double rate_mbps, const TimingConstants& timing);

/// Uniform over {0, ..., cw_min_slots} slots.
Micros backoff(Rng& rng, const TimingConstants& timing);

/// Mean of backoff(), cw_min_slots * slot / 2.
double mean_backoff(const TimingConstants& timing);

/// Uniform winner among backlogged contenders: DCF's equal long-term
/// transmission opportunities. Throws std::invalid_argument when empty.
NodeId contend(std::span<const NodeId> backlogged, Rng& rng);

struct TransferOutcome {
  bool delivered = false;
  int attempts = 0;
  Micros occupancy_us = 0;        // every attempt plus its backoff
  Micros first_attempt_us = 0;    // what a sender-blind observer would charge
  Micros completion_time_us = 0;
};

/// Sends `frame` starting at `start_us`, retrying on independent per-attempt
/// loss until delivery or retry_limit attempts.
TransferOutcome transmit(const Frame& frame, double loss_rate, const TimingConstants& timing, Rng& rng,
                         Micros start_us = 0);

}  // namespace airtime
