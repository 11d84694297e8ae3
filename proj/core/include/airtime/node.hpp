#pragma once

#include <string>

#include "airtime/types.hpp"
#include "airtime/workload.hpp"

namespace airtime {

/// One competing station.
struct NodeSpec {
  std::string id;
  double rate_mbps = 11.0;
  int packet_bytes = 1500;
  double loss_rate = 0.0;  // per attempt, [0, 1)
  Direction direction = Direction::uplink;
  SourceSpec source = SourceSpec::saturating();
};

}  // namespace airtime
