#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "airtime/types.hpp"

namespace airtime {

/// Unregulated AP: per-node drop-tail FIFOs served round-robin.
class RoundRobinQueues {
 public:
  explicit RoundRobinQueues(int total_buffer) : total_buffer_(total_buffer) {}

  void associate(NodeId node);
  /// Throws UnknownNode, or QueueFull after counting the drop.
  void enqueue(const Frame& frame);
  std::optional<Frame> dequeue();
  bool has_frame() const;

  std::size_t queue_len(NodeId node) const;
  std::uint64_t drops(NodeId node) const;
  std::size_t queue_capacity() const { return capacity_; }

 private:
  struct Slot {
    NodeId node;
    std::deque<Frame> queue;
    std::uint64_t drops = 0;
  };
  Slot& slot(NodeId node);
  const Slot& slot(NodeId node) const;

  int total_buffer_;
  std::size_t capacity_ = 0;
  std::vector<Slot> slots_;
  std::size_t cursor_ = 0;
};

}  // namespace airtime
