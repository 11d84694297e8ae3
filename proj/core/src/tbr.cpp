#include "airtime/tbr.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "airtime/errors.hpp"

namespace airtime {

void TbrConfig::validate() const {
  if (initial_tokens_us <= 0 || bucket_us <= 0 || fill_period_us <= 0 || adjust_period_us <= 0)
    throw std::invalid_argument("TBR periods and token sizes must be positive");
  if (!(underuse_threshold > 0.0 && underuse_threshold < 1.0))
    throw std::invalid_argument("underuse_threshold must lie in (0, 1)");
  if (total_buffer < 1) throw std::invalid_argument("total_buffer must be >= 1");
  if (lend_reserve_us < 0) throw std::invalid_argument("lend_reserve_us must be >= 0");
}

TbrScheduler::TbrScheduler(TbrConfig config) : config_(config) { config_.validate(); }

TokenState* TbrScheduler::find(NodeId node) {
  for (auto& s : nodes_)
    if (s.node == node) return &s;
  return nullptr;
}

const TokenState* TbrScheduler::find(NodeId node) const {
  for (const auto& s : nodes_)
    if (s.node == node) return &s;
  return nullptr;
}

const TokenState& TbrScheduler::state(NodeId node) const {
  const auto* s = find(node);
  if (!s) throw UnknownNode("node " + std::to_string(node.value) + " is not associated");
  return *s;
}

void TbrScheduler::associate(NodeId node) {
  if (find(node)) throw DuplicateAssociation("node " + std::to_string(node.value) + " already associated");
  TokenState s;
  s.node = node;
  s.bucket_us = static_cast<double>(config_.bucket_us);
  s.tokens_us = std::min(s.bucket_us, static_cast<double>(config_.initial_tokens_us));
  nodes_.push_back(std::move(s));

  const double share = 1.0 / static_cast<double>(nodes_.size());
  for (auto& n : nodes_) n.rate_share = share;
  queue_capacity_ = std::max<std::size_t>(1, static_cast<std::size_t>(config_.total_buffer) / nodes_.size());
}

void TbrScheduler::fill(Micros elapsed_us, const std::function<bool(NodeId)>& backlogged) {
  if (elapsed_us <= 0) return;
  auto has_work = [&](const TokenState& n) { return backlogged ? backlogged(n.node) : !n.queue.empty(); };
  double spill = 0.0;
  for (auto& n : nodes_) {
    const double credited = n.tokens_us + static_cast<double>(elapsed_us) * n.rate_share;
    const bool lends = config_.lend_surplus && !has_work(n);
    const double keep = lends ? std::min(n.bucket_us, static_cast<double>(config_.lend_reserve_us)) : n.bucket_us;
    if (credited > keep) {
      if (lends) spill += credited - std::max(keep, n.tokens_us);
      n.tokens_us = std::max(keep, n.tokens_us);
      continue;
    }
    n.tokens_us = credited;
  }
  // Water-fill the spill over backlogged buckets; each pass either places
  // all of it or fills another bucket.
  for (std::size_t pass = 0; pass < nodes_.size() && spill > 1e-9; ++pass) {
    double open_share = 0.0;
    for (const auto& n : nodes_)
      if (n.tokens_us < n.bucket_us && has_work(n)) open_share += n.rate_share;
    if (open_share <= 0.0) break;
    double next_spill = 0.0;
    for (auto& n : nodes_) {
      if (n.tokens_us >= n.bucket_us || !has_work(n)) continue;
      const double credited = n.tokens_us + spill * n.rate_share / open_share;
      next_spill += std::max(0.0, credited - n.bucket_us);
      n.tokens_us = std::min(n.bucket_us, credited);
    }
    spill = next_spill;
  }
}

void TbrScheduler::enqueue(const Frame& frame) {
  auto* s = find(frame.owner);
  if (!s) throw UnknownNode("frame for unassociated node " + std::to_string(frame.owner.value));
  if (s->queue.size() >= queue_capacity_) {
    ++s->drops;
    throw QueueFull("queue for node " + std::to_string(frame.owner.value) + " is full");
  }
  s->queue.push_back(frame);
}

std::optional<Frame> TbrScheduler::dequeue() {
  const std::size_t n = nodes_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (cursor_ + k) % n;
    auto& s = nodes_[i];
    if (!s.queue.empty() && s.tokens_us > 0.0) {
      Frame f = s.queue.front();
      s.queue.pop_front();
      cursor_ = (i + 1) % n;
      return f;
    }
  }
  return std::nullopt;
}

bool TbrScheduler::has_eligible() const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [](const TokenState& s) { return !s.queue.empty() && s.tokens_us > 0.0; });
}

bool TbrScheduler::uplink_gate(NodeId node) const { return state(node).tokens_us > 0.0; }

void TbrScheduler::complete(NodeId node, Micros occupancy_us, Micros now_us) {
  auto* s = find(node);
  if (!s) throw UnknownNode("completion for unassociated node " + std::to_string(node.value));
  s->tokens_us -= static_cast<double>(occupancy_us);
  if (s->actual_us == 0.0) s->start_us = now_us;
  s->actual_us += static_cast<double>(occupancy_us);
}

AdjustReport TbrScheduler::adjust_rates(Micros now_us) {
  AdjustReport report;
  std::vector<std::size_t> saturated;
  std::optional<std::size_t> donor;
  double donor_excess = 0.0;

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& s = nodes_[i];
    const Micros span = now_us - s.start_us;
    const double used = (s.actual_us > 0.0 && span > 0) ? s.actual_us / static_cast<double>(span) : 0.0;
    const double excess = s.rate_share - used;
    const bool full = excess <= config_.underuse_threshold;
    report.entries.push_back({s.node, used, excess, full, s.actual_us});
    if (full) {
      saturated.push_back(i);
    } else if (!donor || excess > donor_excess) {
      donor = i;
      donor_excess = excess;
    }
  }

  if (donor && !saturated.empty()) {
    auto& d = nodes_[*donor];
    const double moved = std::min(donor_excess / 2.0, d.rate_share);
    d.rate_share -= moved;
    const double each = moved / static_cast<double>(saturated.size());
    for (std::size_t i : saturated) nodes_[i].rate_share += each;
    report.donor = d.node;
    report.transferred = moved;
  }

  for (auto& s : nodes_) s.actual_us = 0.0;
  return report;
}

double TbrScheduler::share_sum() const {
  double sum = 0.0;
  for (const auto& s : nodes_) sum += s.rate_share;
  return sum;
}

}  // namespace airtime
