#include "airtime/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "airtime/csv.hpp"
#include "airtime/errors.hpp"

namespace airtime {

void BaselineTable::insert(double rate_mbps, int packet_bytes, double gamma_mbps) {
  if (!(rate_mbps > 0.0) || packet_bytes < 1)
    throw std::invalid_argument("baseline key must have positive rate and size");
  if (!(gamma_mbps > 0.0) || !(gamma_mbps < rate_mbps))
    throw std::invalid_argument("baseline gamma " + format_decimal(gamma_mbps) + " must lie in (0, " +
                                format_decimal(rate_mbps) + ")");
  entries_[BaselineKey{rate_mbps, packet_bytes}] = gamma_mbps;
}

double BaselineTable::lookup(double rate_mbps, int packet_bytes) const {
  const auto it = entries_.find(BaselineKey{rate_mbps, packet_bytes});
  if (it == entries_.end())
    throw MissingEntry("no baseline for " + format_decimal(rate_mbps) + " Mbps / " +
                       std::to_string(packet_bytes) + " B; run calibrate first");
  return it->second;
}

bool BaselineTable::contains(double rate_mbps, int packet_bytes) const {
  return entries_.contains(BaselineKey{rate_mbps, packet_bytes});
}

void BaselineTable::validate() const {
  for (auto a = entries_.begin(); a != entries_.end(); ++a) {
    for (auto b = std::next(a); b != entries_.end(); ++b) {
      const auto& [ka, ga] = *a;
      const auto& [kb, gb] = *b;
      const bool same_size = ka.packet_bytes == kb.packet_bytes;
      const bool same_rate = ka.rate_mbps == kb.rate_mbps;
      if (!same_size && !same_rate) continue;
      // Map order puts b after a, so b has the larger rate (or size at equal rate).
      if (!(gb > ga))
        throw std::invalid_argument("baseline not strictly increasing between (" +
                                    format_decimal(ka.rate_mbps) + "," + std::to_string(ka.packet_bytes) +
                                    ") and (" + format_decimal(kb.rate_mbps) + "," +
                                    std::to_string(kb.packet_bytes) + ")");
    }
  }
}

BaselineTable BaselineTable::measured_80211b() {
  BaselineTable t("measured-2node");
  t.insert(11.0, 1500, 5.189);
  t.insert(5.5, 1500, 3.327);
  t.insert(2.0, 1500, 1.493);
  t.insert(1.0, 1500, 0.806);
  return t;
}

namespace {

void require_nodes(std::span<const NodeSpec> nodes) {
  if (nodes.empty()) throw std::invalid_argument("at least one node required");
}

// Time to move one packet at node i's baseline: s_i / gamma_i.
std::vector<double> frame_costs(std::span<const NodeSpec> nodes, const BaselineTable& table) {
  std::vector<double> cost;
  cost.reserve(nodes.size());
  for (const auto& n : nodes) cost.push_back(n.packet_bytes / table.lookup(n.rate_mbps, n.packet_bytes));
  return cost;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

std::vector<double> dcf_shares(std::span<const NodeSpec> nodes, const BaselineTable& table) {
  require_nodes(nodes);
  auto cost = frame_costs(nodes, table);
  const double total = sum(cost);
  for (double& c : cost) c /= total;
  return cost;
}

AllocationReport dcf_throughputs(std::span<const NodeSpec> nodes, const BaselineTable& table) {
  require_nodes(nodes);
  const auto cost = frame_costs(nodes, table);
  const double round = sum(cost);

  AllocationReport report{Regime::rf, {}, 0.0};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes[i].packet_bytes / round;
    report.nodes.push_back({nodes[i].id, cost[i] / round, r});
    report.total_mbps += r;
  }
  return report;
}

AllocationReport tf_throughputs(std::span<const NodeSpec> nodes, const BaselineTable& table) {
  require_nodes(nodes);
  const double n = static_cast<double>(nodes.size());
  AllocationReport report{Regime::tf, {}, 0.0};
  for (const auto& node : nodes) {
    const double r = table.lookup(node.rate_mbps, node.packet_bytes) / n;
    report.nodes.push_back({node.id, 1.0 / n, r});
    report.total_mbps += r;
  }
  return report;
}

ComparisonReport compare_regimes(std::span<const NodeSpec> nodes, const BaselineTable& table) {
  ComparisonReport cmp;
  cmp.rf = dcf_throughputs(nodes, table);
  cmp.tf = tf_throughputs(nodes, table);
  cmp.improvement = cmp.tf.total_mbps / cmp.rf.total_mbps - 1.0;

  const double n = static_cast<double>(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cmp.delta_mbps.push_back(cmp.tf.nodes[i].throughput_mbps - cmp.rf.nodes[i].throughput_mbps);
    // A single-rate network of n nodes at this node's rate splits gamma evenly.
    const double single = table.lookup(nodes[i].rate_mbps, nodes[i].packet_bytes) / n;
    cmp.single_rate_mbps.push_back(single);
    cmp.baseline_holds.push_back(std::abs(single - cmp.tf.nodes[i].throughput_mbps) <= 1e-12 * single);
  }
  return cmp;
}

double fairness_gap(double alpha_i, double alpha_j) { return std::abs(alpha_i - alpha_j); }

}  // namespace airtime
