#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "airtime/types.hpp"

namespace airtime {

struct TbrConfig {
  Micros initial_tokens_us = 20'000;
  Micros bucket_us = 20'000;
  Micros fill_period_us = 1'000;
  Micros adjust_period_us = 1'000'000;
  double underuse_threshold = 0.05;  // R^th, fraction of channel time
  int total_buffer = 100;            // frames, split evenly across nodes
  bool blind_uplink = false;         // charge uplink frames for one attempt only
  bool lend_surplus = true;          // idle nodes pass credit on to backlogged ones
  Micros lend_reserve_us = 5'000;    // credit an idle node keeps before lending

  /// Throws std::invalid_argument.
  void validate() const;
};

/// Per-node regulator state. Tokens are microseconds of channel occupancy.
struct TokenState {
  NodeId node;
  double tokens_us = 0.0;
  double bucket_us = 0.0;
  double rate_share = 0.0;  // fraction of wall-clock channel time
  double actual_us = 0.0;   // occupancy consumed since start_us
  Micros start_us = 0;
  std::deque<Frame> queue;
  std::uint64_t drops = 0;
};

struct AdjustReport {
  struct Entry {
    NodeId node;
    double used_fraction = 0.0;  // actual / (now - start)
    double excess = 0.0;         // rate_share - used_fraction
    bool fully_utilized = false;
    double actual_us = 0.0;      // before the reset
  };
  std::vector<Entry> entries;
  std::optional<NodeId> donor;
  double transferred = 0.0;
};

/// Time-based regulator running at the AP.
///
/// Every associated node owns a token bucket refilled at rate_share of wall
/// clock time and debited with the channel occupancy of every frame to or
/// from that node, including failed attempts. The AP releases downlink frames
/// round-robin among nodes holding positive tokens; uplink senders are held
/// back through uplink_gate(). Shares start equal and are periodically moved
/// from under-utilized nodes toward nodes that consume their full allocation
/// (max-min adjustment).
///
/// Eligibility is tested before a transmission and the debit lands after it,
/// so a node may overdraft by at most one frame.
class TbrScheduler {
 public:
  explicit TbrScheduler(TbrConfig config);

  /// Tokens start at the initial value (capped by the bucket); all shares
  /// rebalance to 1/n. Throws DuplicateAssociation.
  void associate(NodeId node);

  /// Credits elapsed * rate_share to every bucket, clamped at the bucket size.
  /// With lend_surplus, credit spilling out of the full bucket of a node with
  /// nothing to send goes to backlogged nodes in proportion to their shares.
  /// `backlogged` defaults to "has frames queued here".
  void fill(Micros elapsed_us, const std::function<bool(NodeId)>& backlogged = {});

  /// Appends to the node's FIFO. Throws UnknownNode, or QueueFull after
  /// counting the drop when the node's share of the buffer is exhausted.
  void enqueue(const Frame& frame);

  /// Round-robin from the cursor over nodes with a nonempty queue and
  /// positive tokens; dequeues that node's head frame and moves the cursor
  /// past it.
  std::optional<Frame> dequeue();

  /// True when dequeue() would return a frame.
  bool has_eligible() const;

  /// Whether `node` may transmit uplink now (tokens > 0). Throws UnknownNode.
  bool uplink_gate(NodeId node) const;

  /// Debits occupancy from `node` (the destination for downlink frames, the
  /// source for uplink ones) and records it as actual usage.
  void complete(NodeId node, Micros occupancy_us, Micros now_us);

  /// Max-min share adjustment; resets every node's usage counter.
  AdjustReport adjust_rates(Micros now_us);

  const TokenState& state(NodeId node) const;
  const std::vector<TokenState>& states() const { return nodes_; }
  const TbrConfig& config() const { return config_; }
  std::size_t queue_capacity() const { return queue_capacity_; }
  double share_sum() const;

 private:
  TokenState* find(NodeId node);
  const TokenState* find(NodeId node) const;

  TbrConfig config_;
  std::vector<TokenState> nodes_;  // association order
  std::size_t cursor_ = 0;
  std::size_t queue_capacity_ = 0;
};

}  // namespace airtime
