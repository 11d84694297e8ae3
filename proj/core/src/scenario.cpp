#include "airtime/scenario.hpp"

#include <set>
#include <stdexcept>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"

namespace airtime {

void Scenario::validate() const {
  if (nodes.empty()) throw InvalidScenario("scenario has no nodes");
  if (duration_us <= 0) throw InvalidScenario("duration_us must be positive");
  try {
    timing.validate();
    tbr.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidScenario(e.what());
  }

  std::set<std::string> ids;
  for (const auto& n : nodes) {
    const std::string who = "node '" + n.id + "': ";
    if (n.id.empty()) throw InvalidScenario("node id must not be empty");
    if (!ids.insert(n.id).second) throw InvalidScenario(who + "duplicate id");
    if (!is_supported_rate(n.rate_mbps))
      throw InvalidScenario(who + "unsupported rate " + format_decimal(n.rate_mbps) + " Mbps");
    if (n.packet_bytes < 1 || n.packet_bytes > 2304) throw InvalidScenario(who + "packet_bytes out of [1, 2304]");
    if (!(n.loss_rate >= 0.0 && n.loss_rate < 1.0)) throw InvalidScenario(who + "loss_rate out of [0, 1)");
    try {
      n.source.validate(n.packet_bytes);
    } catch (const std::invalid_argument& e) {
      throw InvalidScenario(who + e.what());
    }
  }
}

bool Scenario::all_tasks() const {
  for (const auto& n : nodes)
    if (n.source.kind != SourceSpec::Kind::task) return false;
  return !nodes.empty();
}

}  // namespace airtime
