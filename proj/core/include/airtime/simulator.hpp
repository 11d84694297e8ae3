#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "airtime/event_log.hpp"
#include "airtime/scenario.hpp"
#include "airtime/workload.hpp"

namespace airtime {

/// Regulator state of one node, recorded at every rate adjustment. rate_share
/// is the post-adjustment value; actual_us is the usage of the period that
/// just ended.
struct SchedulerSnapshot {
  Micros time_us = 0;
  NodeId node;
  double rate_share = 0.0;
  double tokens_us = 0.0;
  double actual_us = 0.0;
  std::size_t queue_len = 0;
  std::uint64_t drops = 0;
};

inline constexpr const char* kSnapshotCsvHeader = "time_us,node_id,rate_share,tokens_us,actual_us,queue_len,drops";

struct SimulationResult {
  EventLog log;
  std::vector<SchedulerSnapshot> snapshots;  // TBR only
  std::vector<double> share_sums;            // sum of rate_share after each adjustment
  std::vector<SourceState> sources;          // final state, indexed like scenario.nodes
  std::vector<std::uint64_t> ap_drops;       // AP queue overflow, per node
  Micros end_time_us = 0;
  Micros busy_us = 0;
  Micros idle_us = 0;
  double min_tokens_us = 0.0;  // lowest balance seen after any debit (TBR)
};

/// Runs the scenario to its duration, or until every task source is done.
///
/// Under DCF every backlogged station, plus the AP when it holds downlink
/// frames, contends for each transmission opportunity with equal probability;
/// the AP serves its per-node queues round-robin. Under TBR the AP releases
/// frames through the regulator and stations without tokens sit out of
/// contention. Deterministic in (scenario, seed). Throws InvalidScenario.
SimulationResult simulate(const Scenario& scenario);

std::string to_csv(const std::vector<SchedulerSnapshot>& rows, const EventLog& log);

}  // namespace airtime
