#include "airtime/calibration.hpp"

#include <cmath>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"
#include "airtime/metrics.hpp"
#include "airtime/simulator.hpp"

namespace airtime {

Scenario calibration_scenario(double rate_mbps, const CalibrationOptions& options) {
  if (!is_supported_rate(rate_mbps)) throw InvalidScenario("unsupported rate " + format_decimal(rate_mbps) + " Mbps");

  double per_frame = static_cast<double>(attempt_airtime(options.packet_bytes, rate_mbps, options.timing)) +
                     mean_backoff(options.timing);
  if (options.source.kind == SourceSpec::Kind::window) {
    per_frame += static_cast<double>(attempt_airtime(options.source.ack_bytes, rate_mbps, options.timing)) +
                 mean_backoff(options.timing);
  }

  Scenario s;
  s.scheduler = SchedulerKind::dcf;
  s.seed = options.seed;
  s.timing = options.timing;
  s.duration_us = static_cast<Micros>(std::ceil(per_frame * static_cast<double>(options.target_frames)));
  for (const char* id : {"a", "b"}) {
    NodeSpec n;
    n.id = id;
    n.rate_mbps = rate_mbps;
    n.packet_bytes = options.packet_bytes;
    n.direction = options.direction;
    n.source = options.source;
    s.nodes.push_back(n);
  }
  return s;
}

BaselineTable calibrate(const CalibrationOptions& options) {
  if (options.rates.empty()) throw InvalidScenario("no rates to calibrate");
  BaselineTable table("sim-calibrated");
  for (double rate : options.rates) {
    const auto scenario = calibration_scenario(rate, options);
    const auto result = simulate(scenario);
    const auto m = window_metrics(result.log, 0, scenario.duration_us);
    table.insert(rate, options.packet_bytes, m.aggr_throughput_mbps);
  }
  return table;
}

}  // namespace airtime
