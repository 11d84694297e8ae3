#include "airtime/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"

namespace airtime {

namespace {

constexpr const char* kTraceHeaderNoRetries = "timestamp_us,node_id,direction,bytes,rate_mbps";

Direction parse_direction(std::string_view v) {
  if (v == "uplink") return Direction::uplink;
  if (v == "downlink") return Direction::downlink;
  throw std::invalid_argument("expected uplink|downlink, got '" + std::string(v) + "'");
}

}  // namespace

std::vector<TraceRecord> read_trace_csv(std::istream& in, const std::string& origin) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (columns == 0) {
      if (text == kTraceCsvHeader) columns = 6;
      else if (text == kTraceHeaderNoRetries) columns = 5;
      else throw ParseError(origin, lineno, "header", std::string("expected '") + kTraceCsvHeader + "'");
      continue;
    }
    const auto cols = split_csv_line(text);
    if (cols.size() != columns)
      throw ParseError(origin, lineno, "", "expected " + std::to_string(columns) + " columns");
    TraceRecord r;
    std::string field;
    try {
      field = "timestamp_us";
      r.timestamp_us = parse_int64(cols[0]);
      field = "node_id";
      if (cols[1].empty()) throw std::invalid_argument("empty node id");
      r.node_id = std::string(cols[1]);
      field = "direction";
      r.direction = parse_direction(cols[2]);
      field = "bytes";
      r.bytes = parse_int64(cols[3]);
      if (r.bytes < 1) throw std::invalid_argument("bytes must be >= 1");
      field = "rate_mbps";
      r.rate_mbps = parse_double(cols[4]);
      if (!is_supported_rate(r.rate_mbps)) throw std::invalid_argument("rate not in {1, 2, 5.5, 11}");
      if (columns == 6) {
        field = "retries";
        const auto retries = parse_int64(cols[5]);
        if (retries < 0 || retries > 1000) throw std::invalid_argument("retries out of range");
        r.retries = static_cast<int>(retries);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(origin, lineno, field, e.what());
    }
    out.push_back(std::move(r));
  }
  if (columns == 0) throw ParseError(origin, 0, "header", "empty trace file");
  return out;
}

std::vector<TraceRecord> load_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open file");
  return read_trace_csv(in, path.string());
}

std::string to_csv(std::span<const TraceRecord> records) {
  std::ostringstream out;
  out << kTraceCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.timestamp_us << ',' << r.node_id << ',' << to_string(r.direction) << ',' << r.bytes << ','
        << format_decimal(r.rate_mbps) << ',' << r.retries << '\n';
  }
  return out.str();
}

std::vector<TraceRecord> to_trace(const EventLog& log) {
  std::vector<TraceRecord> out;
  for (const auto& e : log.entries) {
    if (!e.delivered || e.kind != FrameKind::data) continue;
    out.push_back(TraceRecord{e.end_us(), log.id_of(e.node), e.direction, e.bytes, e.rate_mbps, e.attempts - 1});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TraceRecord& a, const TraceRecord& b) { return a.timestamp_us < b.timestamp_us; });
  return out;
}

std::map<double, double> rate_distribution(std::span<const TraceRecord> records) {
  if (records.empty()) throw EmptyTrace("trace has no records");
  std::map<double, std::int64_t> bytes;
  std::int64_t total = 0;
  for (const auto& r : records) {
    bytes[r.rate_mbps] += r.bytes;
    total += r.bytes;
  }
  std::map<double, double> out;
  for (const auto& [rate, b] : bytes) out[rate] = static_cast<double>(b) / static_cast<double>(total);
  return out;
}

std::vector<Interval> busy_intervals(std::span<const TraceRecord> records, double threshold_mbps, Micros window_us) {
  if (window_us <= 0) throw std::invalid_argument("window must be positive");
  std::map<Micros, std::int64_t> bytes_per_window;
  for (const auto& r : records) {
    // Floor division, so negative timestamps still land in aligned windows.
    Micros k = r.timestamp_us / window_us;
    if (r.timestamp_us % window_us != 0 && r.timestamp_us < 0) --k;
    bytes_per_window[k] += r.bytes;
  }
  std::vector<Interval> out;
  for (const auto& [k, b] : bytes_per_window) {
    const double mbps = static_cast<double>(b) * 8.0 / static_cast<double>(window_us);
    if (mbps >= threshold_mbps) out.push_back(Interval{k * window_us, (k + 1) * window_us, mbps});
  }
  return out;
}

std::vector<HeaviestUser> heaviest_user_fraction(std::span<const TraceRecord> records,
                                                 std::span<const Interval> intervals) {
  const auto by_time = [](const TraceRecord& r, Micros t) { return r.timestamp_us < t; };
  const bool sorted = std::is_sorted(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.timestamp_us < b.timestamp_us;
  });
  std::vector<HeaviestUser> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) {
    auto first = records.begin();
    auto last = records.end();
    if (sorted) {
      first = std::lower_bound(records.begin(), records.end(), iv.start_us, by_time);
      last = std::lower_bound(first, records.end(), iv.end_us, by_time);
    }
    std::map<std::string, std::int64_t, std::less<>> per_node;
    std::int64_t total = 0;
    for (auto it = first; it != last; ++it) {
      if (it->timestamp_us < iv.start_us || it->timestamp_us >= iv.end_us) continue;
      per_node[it->node_id] += it->bytes;
      total += it->bytes;
    }
    HeaviestUser h{iv, {}, 0.0, per_node.size()};
    std::int64_t best = 0;
    for (const auto& [node, b] : per_node) {
      if (b > best) {
        best = b;
        h.node_id = node;
      }
    }
    if (total > 0) h.fraction = static_cast<double>(best) / static_cast<double>(total);
    out.push_back(std::move(h));
  }
  return out;
}

std::string rate_distribution_csv(const std::map<double, double>& dist) {
  std::ostringstream out;
  out << "rate_mbps,byte_fraction\n";
  for (const auto& [rate, f] : dist) out << format_decimal(rate) << ',' << format_fixed(f, 6) << '\n';
  return out.str();
}

std::string busy_intervals_csv(std::span<const Interval> intervals) {
  std::ostringstream out;
  out << "start_us,end_us,throughput_mbps\n";
  for (const auto& iv : intervals) out << iv.start_us << ',' << iv.end_us << ',' << format_fixed(iv.throughput_mbps, 4) << '\n';
  return out.str();
}

std::string heaviest_user_csv(std::span<const HeaviestUser> rows) {
  std::ostringstream out;
  out << "start_us,end_us,heaviest_node,fraction,active_users\n";
  for (const auto& h : rows) {
    out << h.interval.start_us << ',' << h.interval.end_us << ',' << h.node_id << ',' << format_fixed(h.fraction, 6)
        << ',' << h.active_users << '\n';
  }
  return out.str();
}

}  // namespace airtime
