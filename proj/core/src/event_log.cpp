#include "airtime/event_log.hpp"

#include <ostream>
#include <sstream>

#include "airtime/csv.hpp"

namespace airtime {

void write_event_log_csv(std::ostream& out, const EventLog& log) {
  out << kEventLogCsvHeader << '\n';
  for (const auto& e : log.entries) {
    out << e.time_us << ',' << log.id_of(e.node) << ',' << to_string(e.direction) << ',' << e.bytes << ','
        << format_decimal(e.rate_mbps) << ',' << e.attempts << ',' << e.occupancy_us << ','
        << (e.delivered ? 1 : 0) << '\n';
  }
}

std::string to_csv(const EventLog& log) {
  std::ostringstream out;
  write_event_log_csv(out, log);
  return out.str();
}

}  // namespace airtime
