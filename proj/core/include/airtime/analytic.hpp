#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "airtime/node.hpp"

namespace airtime {

struct BaselineKey {
  double rate_mbps = 0.0;
  int packet_bytes = 0;
  friend auto operator<=>(const BaselineKey&, const BaselineKey&) = default;
};

/// Baseline throughput gamma(d, s): total goodput when every competing node
/// uses rate d and packet size s. Lookups are exact-match only.
class BaselineTable {
 public:
  BaselineTable() = default;
  explicit BaselineTable(std::string provenance) : provenance_(std::move(provenance)) {}

  /// Adds or replaces an entry. Requires 0 < gamma < rate, packet_bytes >= 1.
  void insert(double rate_mbps, int packet_bytes, double gamma_mbps);

  /// Throws MissingEntry when (rate, size) was never measured.
  double lookup(double rate_mbps, int packet_bytes) const;
  bool contains(double rate_mbps, int packet_bytes) const;

  /// Checks that gamma is strictly increasing in rate at fixed size and in
  /// size at fixed rate. Throws std::invalid_argument.
  void validate() const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<BaselineKey, double>& entries() const { return entries_; }
  const std::string& provenance() const { return provenance_; }

  /// Two-node 802.11b TCP measurements at 1500 bytes (Cisco-350 clients,
  /// frame loss < 2%).
  static BaselineTable measured_80211b();

 private:
  std::map<BaselineKey, double> entries_;
  std::string provenance_;
};

enum class Regime { rf, tf };  // throughput-based / time-based fairness

constexpr const char* to_string(Regime r) { return r == Regime::rf ? "RF" : "TF"; }

struct NodeAllocation {
  std::string id;
  double share_of_time = 0.0;
  double throughput_mbps = 0.0;
};

struct AllocationReport {
  Regime regime = Regime::rf;
  std::vector<NodeAllocation> nodes;
  double total_mbps = 0.0;
};

struct ComparisonReport {
  AllocationReport rf;
  AllocationReport tf;
  double improvement = 0.0;               // R'(I) / R(I) - 1
  std::vector<double> delta_mbps;         // TF - RF, per node
  std::vector<double> single_rate_mbps;   // gamma_i / n: same node among n peers at its own rate
  std::vector<bool> baseline_holds;       // single_rate == TF throughput
};

/// Channel-time shares under DCF's equal transmission opportunities:
/// T(i) = (s_i / g_i) / sum_j (s_j / g_j).
std::vector<double> dcf_shares(std::span<const NodeSpec> nodes, const BaselineTable& table);

/// Per-node throughput under DCF, R(i) = s_i / sum_j (s_j / g_j).
AllocationReport dcf_throughputs(std::span<const NodeSpec> nodes, const BaselineTable& table);

/// Equal channel time: T'(i) = 1/n, R'(i) = g_i / n.
AllocationReport tf_throughputs(std::span<const NodeSpec> nodes, const BaselineTable& table);

ComparisonReport compare_regimes(std::span<const NodeSpec> nodes, const BaselineTable& table);

/// |alpha_i - alpha_j| for shares of either channel time or throughput.
double fairness_gap(double alpha_i, double alpha_j);

}  // namespace airtime
