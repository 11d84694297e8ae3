#include "airtime/scenario_file.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"

namespace airtime {

namespace {

using Setter = std::function<void(std::string_view)>;

int to_int(std::string_view v) {
  const auto x = parse_int64(v);
  if (x < -2'000'000'000 || x > 2'000'000'000) throw std::invalid_argument("integer out of range");
  return static_cast<int>(x);
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected true|false, got '" + std::string(v) + "'");
}

std::map<std::string, Setter, std::less<>> sim_setters(Scenario& s) {
  auto& t = s.timing;
  auto& r = s.tbr;
  return {
      {"scheduler",
       [&s](std::string_view v) {
         if (v == "dcf") s.scheduler = SchedulerKind::dcf;
         else if (v == "tbr") s.scheduler = SchedulerKind::tbr;
         else throw std::invalid_argument("expected dcf|tbr, got '" + std::string(v) + "'");
       }},
      {"duration_us", [&s](std::string_view v) { s.duration_us = parse_int64(v); }},
      {"seed", [&s](std::string_view v) { s.seed = parse_uint64(v); }},
      {"slot_us", [&t](std::string_view v) { t.slot_us = parse_int64(v); }},
      {"sifs_us", [&t](std::string_view v) { t.sifs_us = parse_int64(v); }},
      {"difs_us", [&t](std::string_view v) { t.difs_us = parse_int64(v); }},
      {"plcp_us", [&t](std::string_view v) { t.plcp_us = parse_int64(v); }},
      {"ack_bytes", [&t](std::string_view v) { t.ack_bytes = to_int(v); }},
      {"ack_rate_mbps", [&t](std::string_view v) { t.ack_rate_mbps = parse_double(v); }},
      {"cw_min_slots", [&t](std::string_view v) { t.cw_min_slots = to_int(v); }},
      {"retry_limit", [&t](std::string_view v) { t.retry_limit = to_int(v); }},
      {"initial_tokens_us", [&r](std::string_view v) { r.initial_tokens_us = parse_int64(v); }},
      {"bucket_us", [&r](std::string_view v) { r.bucket_us = parse_int64(v); }},
      {"fill_period_us", [&r](std::string_view v) { r.fill_period_us = parse_int64(v); }},
      {"adjust_period_us", [&r](std::string_view v) { r.adjust_period_us = parse_int64(v); }},
      {"underuse_threshold", [&r](std::string_view v) { r.underuse_threshold = parse_double(v); }},
      {"total_buffer", [&r](std::string_view v) { r.total_buffer = to_int(v); }},
      {"blind_uplink", [&r](std::string_view v) { r.blind_uplink = to_bool(v); }},
      {"lend_surplus", [&r](std::string_view v) { r.lend_surplus = to_bool(v); }},
      {"lend_reserve_us", [&r](std::string_view v) { r.lend_reserve_us = parse_int64(v); }},
  };
}

std::map<std::string, Setter, std::less<>> node_setters(NodeSpec& n) {
  return {
      {"rate_mbps", [&n](std::string_view v) { n.rate_mbps = parse_double(v); }},
      {"packet_bytes", [&n](std::string_view v) { n.packet_bytes = to_int(v); }},
      {"loss_rate", [&n](std::string_view v) { n.loss_rate = parse_double(v); }},
      {"direction",
       [&n](std::string_view v) {
         if (v == "uplink") n.direction = Direction::uplink;
         else if (v == "downlink") n.direction = Direction::downlink;
         else throw std::invalid_argument("expected uplink|downlink, got '" + std::string(v) + "'");
       }},
      {"source",
       [&n](std::string_view v) {
         const int ack = n.source.ack_bytes;
         n.source = SourceSpec::parse(v);
         n.source.ack_bytes = ack;
       }},
      {"transport_ack_bytes", [&n](std::string_view v) { n.source.ack_bytes = to_int(v); }},
  };
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& origin) {
  Scenario scenario;
  // Node setters capture references, so nodes live in a stable container
  // until the end of parsing.
  std::vector<std::unique_ptr<NodeSpec>> nodes;

  std::map<std::string, Setter, std::less<>> setters;
  std::set<std::string, std::less<>> seen_keys;
  std::set<std::string, std::less<>> seen_sections;
  bool in_section = false;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = strip_comment(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(origin, lineno, "", "unterminated section header");
      const auto header = trim(line.substr(1, line.size() - 2));
      if (!seen_sections.insert(std::string(header)).second)
        throw ParseError(origin, lineno, std::string(header), "duplicate section");
      seen_keys.clear();
      in_section = true;
      if (header == "sim") {
        setters = sim_setters(scenario);
      } else if (header.starts_with("node ") || header.starts_with("node\t")) {
        const auto id = trim(header.substr(4));
        if (id.empty()) throw ParseError(origin, lineno, "node", "node section needs an id");
        nodes.push_back(std::make_unique<NodeSpec>());
        nodes.back()->id = std::string(id);
        setters = node_setters(*nodes.back());
      } else {
        throw ParseError(origin, lineno, std::string(header), "unknown section (expected [sim] or [node <id>])");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(origin, lineno, "", "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!in_section) throw ParseError(origin, lineno, std::string(key), "key outside of a section");
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(origin, lineno, std::string(key), "unknown key");
    if (!seen_keys.insert(std::string(key)).second)
      throw ParseError(origin, lineno, std::string(key), "duplicate key");
    if (value.empty()) throw ParseError(origin, lineno, std::string(key), "missing value");
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(origin, lineno, std::string(key), e.what());
    } catch (const std::out_of_range& e) {
      throw ParseError(origin, lineno, std::string(key), e.what());
    }
  }

  if (!seen_sections.contains("sim")) throw ParseError(origin, lineno, "sim", "missing [sim] section");
  for (auto& n : nodes) scenario.nodes.push_back(std::move(*n));
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open file");
  return parse_scenario(in, path.string());
}

std::string to_ini(const Scenario& s) {
  std::ostringstream out;
  const auto& t = s.timing;
  const auto& r = s.tbr;
  out << "[sim]\n"
      << "scheduler = " << to_string(s.scheduler) << '\n'
      << "duration_us = " << s.duration_us << '\n'
      << "seed = " << s.seed << '\n'
      << "slot_us = " << t.slot_us << '\n'
      << "sifs_us = " << t.sifs_us << '\n'
      << "difs_us = " << t.difs_us << '\n'
      << "plcp_us = " << t.plcp_us << '\n'
      << "ack_bytes = " << t.ack_bytes << '\n'
      << "ack_rate_mbps = " << format_decimal(t.ack_rate_mbps) << '\n'
      << "cw_min_slots = " << t.cw_min_slots << '\n'
      << "retry_limit = " << t.retry_limit << '\n'
      << "initial_tokens_us = " << r.initial_tokens_us << '\n'
      << "bucket_us = " << r.bucket_us << '\n'
      << "fill_period_us = " << r.fill_period_us << '\n'
      << "adjust_period_us = " << r.adjust_period_us << '\n'
      << "underuse_threshold = " << format_decimal(r.underuse_threshold) << '\n'
      << "total_buffer = " << r.total_buffer << '\n'
      << "blind_uplink = " << (r.blind_uplink ? "true" : "false") << '\n'
      << "lend_surplus = " << (r.lend_surplus ? "true" : "false") << '\n'
      << "lend_reserve_us = " << r.lend_reserve_us << '\n';
  for (const auto& n : s.nodes) {
    out << "\n[node " << n.id << "]\n"
        << "rate_mbps = " << format_decimal(n.rate_mbps) << '\n'
        << "packet_bytes = " << n.packet_bytes << '\n'
        << "loss_rate = " << format_decimal(n.loss_rate) << '\n'
        << "direction = " << to_string(n.direction) << '\n'
        << "source = " << n.source.to_string() << '\n'
        << "transport_ack_bytes = " << n.source.ack_bytes << '\n';
  }
  return out.str();
}

}  // namespace airtime
