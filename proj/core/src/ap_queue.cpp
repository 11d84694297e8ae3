#include "airtime/ap_queue.hpp"

#include <algorithm>
#include <string>

#include "airtime/errors.hpp"

namespace airtime {

void RoundRobinQueues::associate(NodeId node) {
  for (const auto& s : slots_)
    if (s.node == node) throw DuplicateAssociation("node " + std::to_string(node.value) + " already associated");
  slots_.push_back(Slot{node, {}, 0});
  capacity_ = std::max<std::size_t>(1, static_cast<std::size_t>(total_buffer_) / slots_.size());
}

RoundRobinQueues::Slot& RoundRobinQueues::slot(NodeId node) {
  for (auto& s : slots_)
    if (s.node == node) return s;
  throw UnknownNode("node " + std::to_string(node.value) + " is not associated");
}

const RoundRobinQueues::Slot& RoundRobinQueues::slot(NodeId node) const {
  for (const auto& s : slots_)
    if (s.node == node) return s;
  throw UnknownNode("node " + std::to_string(node.value) + " is not associated");
}

void RoundRobinQueues::enqueue(const Frame& frame) {
  auto& s = slot(frame.owner);
  if (s.queue.size() >= capacity_) {
    ++s.drops;
    throw QueueFull("queue for node " + std::to_string(frame.owner.value) + " is full");
  }
  s.queue.push_back(frame);
}

std::optional<Frame> RoundRobinQueues::dequeue() {
  const std::size_t n = slots_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (cursor_ + k) % n;
    if (!slots_[i].queue.empty()) {
      Frame f = slots_[i].queue.front();
      slots_[i].queue.pop_front();
      cursor_ = (i + 1) % n;
      return f;
    }
  }
  return std::nullopt;
}

bool RoundRobinQueues::has_frame() const {
  return std::any_of(slots_.begin(), slots_.end(), [](const Slot& s) { return !s.queue.empty(); });
}

std::size_t RoundRobinQueues::queue_len(NodeId node) const { return slot(node).queue.size(); }
std::uint64_t RoundRobinQueues::drops(NodeId node) const { return slot(node).drops; }

}  // namespace airtime
