#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "airtime/event_log.hpp"
#include "airtime/scenario.hpp"

namespace airtime {

struct NodeWindowMetrics {
  NodeId node;
  double alpha_time = 0.0;        // channel occupancy / window length
  double alpha_throughput = 0.0;  // delivered bytes / all delivered bytes
  double throughput_mbps = 0.0;
  Micros occupancy_us = 0;
  std::int64_t delivered_bytes = 0;
};

struct WindowMetrics {
  Micros t1_us = 0;
  Micros t2_us = 0;
  std::vector<NodeWindowMetrics> nodes;  // one per log node, in NodeId order
  double aggr_throughput_mbps = 0.0;
  bool empty = false;  // nothing overlapped the window; every figure is zero
};

/// Fairness and efficiency over [t1, t2).
///
/// Occupancy is clipped to the window. Throughput counts payload of
/// delivered data frames (transport acks excluded) whose transmission ended
/// inside the window. Throws std::invalid_argument unless t1 < t2.
WindowMetrics window_metrics(const EventLog& log, Micros t1_us, Micros t2_us);

/// Consecutive tumbling windows covering [0, end_us).
std::vector<WindowMetrics> tumbling_window_metrics(const EventLog& log, Micros window_us, Micros end_us);

inline constexpr const char* kWindowMetricsCsvHeader =
    "t1_us,t2_us,node_id,alpha_time,alpha_throughput,throughput_mbps";
std::string to_csv(const std::vector<WindowMetrics>& windows, const EventLog& log);

struct TaskReport {
  std::vector<Micros> completion_time_us;  // indexed like scenario.nodes
  double avg_task_time_us = 0.0;
  Micros final_task_time_us = 0;
};

/// Task completion times from the log: a node's task ends with the delivery
/// that brings its payload total to the task size. Throws
/// std::invalid_argument unless every source is a task, IncompleteTasks if
/// some task never finished.
TaskReport task_report(const EventLog& log, const Scenario& scenario);

}  // namespace airtime
