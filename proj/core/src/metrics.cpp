#include "airtime/metrics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"

namespace airtime {

WindowMetrics window_metrics(const EventLog& log, Micros t1_us, Micros t2_us) {
  if (!(t1_us < t2_us)) throw std::invalid_argument("window needs t1 < t2");

  WindowMetrics m;
  m.t1_us = t1_us;
  m.t2_us = t2_us;
  m.nodes.resize(log.node_ids.size());
  for (std::size_t i = 0; i < m.nodes.size(); ++i) m.nodes[i].node = NodeId{static_cast<std::uint32_t>(i)};

  bool touched = false;
  std::int64_t total_bytes = 0;
  // Transmissions never overlap, so end times are sorted too.
  const auto first = std::partition_point(log.entries.begin(), log.entries.end(),
                                          [t1_us](const LogEntry& e) { return e.end_us() < t1_us; });
  for (auto it = first; it != log.entries.end(); ++it) {
    const auto& e = *it;
    if (e.time_us >= t2_us) break;
    const Micros lo = std::max(e.time_us, t1_us);
    const Micros hi = std::min(e.end_us(), t2_us);
    if (hi <= lo && !(e.occupancy_us == 0 && e.time_us >= t1_us)) continue;
    touched = true;
    auto& n = m.nodes.at(e.node.value);
    n.occupancy_us += std::max<Micros>(0, hi - lo);
    if (e.delivered && e.kind == FrameKind::data && e.end_us() >= t1_us && e.end_us() < t2_us) {
      n.delivered_bytes += e.bytes;
      total_bytes += e.bytes;
    }
  }

  m.empty = !touched;
  const double span = static_cast<double>(t2_us - t1_us);
  for (auto& n : m.nodes) {
    n.alpha_time = static_cast<double>(n.occupancy_us) / span;
    n.alpha_throughput = total_bytes > 0 ? static_cast<double>(n.delivered_bytes) / static_cast<double>(total_bytes) : 0.0;
    n.throughput_mbps = static_cast<double>(n.delivered_bytes) * 8.0 / span;
  }
  m.aggr_throughput_mbps = static_cast<double>(total_bytes) * 8.0 / span;
  return m;
}

std::vector<WindowMetrics> tumbling_window_metrics(const EventLog& log, Micros window_us, Micros end_us) {
  if (window_us <= 0) throw std::invalid_argument("window must be positive");
  std::vector<WindowMetrics> out;
  for (Micros t = 0; t < end_us; t += window_us) out.push_back(window_metrics(log, t, std::min(t + window_us, end_us)));
  return out;
}

std::string to_csv(const std::vector<WindowMetrics>& windows, const EventLog& log) {
  std::ostringstream out;
  out << kWindowMetricsCsvHeader << '\n';
  for (const auto& w : windows) {
    for (const auto& n : w.nodes) {
      out << w.t1_us << ',' << w.t2_us << ',' << log.id_of(n.node) << ',' << format_fixed(n.alpha_time, 6) << ','
          << format_fixed(n.alpha_throughput, 6) << ',' << format_fixed(n.throughput_mbps, 4) << '\n';
    }
  }
  return out.str();
}

TaskReport task_report(const EventLog& log, const Scenario& scenario) {
  if (!scenario.all_tasks()) throw std::invalid_argument("task report needs task sources on every node");
  const std::size_t n = scenario.nodes.size();
  if (log.node_ids.size() != n) throw std::invalid_argument("log and scenario disagree on node count");

  std::vector<std::int64_t> delivered(n, 0);
  std::vector<std::optional<Micros>> done(n);
  for (const auto& e : log.entries) {
    if (!e.delivered || e.kind != FrameKind::data) continue;
    const auto i = e.node.value;
    if (done[i]) continue;
    delivered[i] += e.bytes;
    if (delivered[i] >= scenario.nodes[i].source.total_bytes) done[i] = e.end_us();
  }

  TaskReport report;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!done[i]) throw IncompleteTasks("task of node '" + scenario.nodes[i].id + "' did not complete");
    report.completion_time_us.push_back(*done[i]);
    sum += static_cast<double>(*done[i]);
    report.final_task_time_us = std::max(report.final_task_time_us, *done[i]);
  }
  report.avg_task_time_us = sum / static_cast<double>(n);
  return report;
}

}  // namespace airtime
