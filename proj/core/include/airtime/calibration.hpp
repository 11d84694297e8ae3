#pragma once

#include <cstdint>
#include <vector>

#include "airtime/analytic.hpp"
#include "airtime/scenario.hpp"

namespace airtime {

struct CalibrationOptions {
  std::vector<double> rates{1.0, 2.0, 5.5, 11.0};
  int packet_bytes = 1500;
  TimingConstants timing;
  SourceSpec source = SourceSpec::saturating();
  Direction direction = Direction::uplink;
  std::uint64_t seed = 1;
  std::int64_t target_frames = 20'000;  // delivered frames per rate, roughly
};

/// Two identical stations at `rate_mbps` under DCF, sized to deliver about
/// target_frames frames.
Scenario calibration_scenario(double rate_mbps, const CalibrationOptions& options);

/// Simulated baseline throughput for every requested rate: total goodput of
/// two identical backlogged stations. Throws InvalidScenario on an
/// unsupported rate.
BaselineTable calibrate(const CalibrationOptions& options);

}  // namespace airtime
