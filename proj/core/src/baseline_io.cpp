#include "airtime/baseline_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"

namespace airtime {

std::string to_csv(const BaselineTable& table) {
  std::ostringstream out;
  out << kBaselineCsvHeader << '\n';
  for (const auto& [key, gamma] : table.entries()) {
    out << format_decimal(key.rate_mbps) << ',' << key.packet_bytes << ',' << format_fixed(gamma, 4) << '\n';
  }
  return out.str();
}

BaselineTable read_baseline_csv(std::istream& in, const std::string& origin) {
  BaselineTable table(origin);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (!header_seen) {
      if (text != kBaselineCsvHeader)
        throw ParseError(origin, lineno, "header", std::string("expected '") + kBaselineCsvHeader + "'");
      header_seen = true;
      continue;
    }
    const auto cols = split_csv_line(text);
    if (cols.size() != 3) throw ParseError(origin, lineno, "", "expected 3 columns");
    const char* field = "rate_mbps";
    try {
      const double rate = parse_double(cols[0]);
      field = "packet_bytes";
      const auto bytes = parse_int64(cols[1]);
      if (bytes < 1 || bytes > 65535) throw std::invalid_argument("out of range");
      field = "gamma_mbps";
      table.insert(rate, static_cast<int>(bytes), parse_double(cols[2]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(origin, lineno, field, e.what());
    }
  }
  if (!header_seen) throw ParseError(origin, 0, "header", "empty baseline file");
  if (table.empty()) throw ParseError(origin, lineno, "", "baseline table has no entries");
  try {
    table.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin, 0, "", e.what());
  }
  return table;
}

BaselineTable load_baseline_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open file");
  return read_baseline_csv(in, path.string());
}

}  // namespace airtime
