#include "airtime/simulator.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>

#include "airtime/ap_queue.hpp"
#include "airtime/csv.hpp"
#include "airtime/errors.hpp"
#include "airtime/mac.hpp"
#include "airtime/rng.hpp"
#include "airtime/tbr.hpp"

namespace airtime {

namespace {

constexpr NodeId kAccessPoint{std::numeric_limits<std::uint32_t>::max()};
constexpr Micros kNever = std::numeric_limits<Micros>::max();

class Simulation {
 public:
  explicit Simulation(const Scenario& s) : scenario_(s), rng_(s.seed), rr_(s.tbr.total_buffer) {
    const std::size_t n = s.nodes.size();
    result_.log.node_ids.reserve(n);
    client_queue_.resize(n);
    ap_deferred_.resize(n);
    result_.ap_drops.assign(n, 0);
    if (tbr_enabled()) tbr_.emplace(s.tbr);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& spec = s.nodes[i];
      const NodeId id{static_cast<std::uint32_t>(i)};
      result_.log.node_ids.push_back(spec.id);
      sources_.emplace_back(id, spec.direction, spec.source, spec.packet_bytes, spec.rate_mbps);
      if (tbr_) tbr_->associate(id);
      else rr_.associate(id);
    }
    next_fill_ = s.tbr.fill_period_us;
    next_adjust_ = s.tbr.adjust_period_us;
    if (tbr_) result_.min_tokens_us = static_cast<double>(s.tbr.initial_tokens_us);
  }

  SimulationResult run() {
    const Micros duration = scenario_.duration_us;
    while (now_ < duration) {
      run_timers(now_, /*inclusive=*/true);
      pull_sources();
      if (scenario_.all_tasks() && all_done()) break;

      contenders_.clear();
      for (std::size_t i = 0; i < client_queue_.size(); ++i) {
        const NodeId id{static_cast<std::uint32_t>(i)};
        if (!client_queue_[i].empty() && (!tbr_ || tbr_->uplink_gate(id))) contenders_.push_back(id);
      }
      if (tbr_ ? tbr_->has_eligible() : rr_.has_frame()) contenders_.push_back(kAccessPoint);

      if (contenders_.empty()) {
        const Micros wake = std::min(next_wakeup(), duration);
        if (wake == kNever || wake <= now_) break;
        result_.idle_us += wake - now_;
        now_ = wake;
        continue;
      }

      const NodeId winner = contend(contenders_, rng_);
      Frame frame;
      if (winner == kAccessPoint) {
        frame = tbr_ ? *tbr_->dequeue() : *rr_.dequeue();
      } else {
        frame = client_queue_[winner.value].front();
        client_queue_[winner.value].pop_front();
      }
      send(frame);
    }
    return finish();
  }

 private:
  bool tbr_enabled() const { return scenario_.scheduler == SchedulerKind::tbr; }

  bool all_done() const {
    return std::all_of(sources_.begin(), sources_.end(), [](const Source& s) { return s.done(); });
  }

  // Fill and adjust timers due before `t` (or at `t` when inclusive), in
  // time order; a fill due at the same instant as an adjustment goes first.
  void run_timers(Micros t, bool inclusive) {
    if (!tbr_) return;
    auto due = [&](Micros at) { return inclusive ? at <= t : at < t; };
    while (due(next_fill_) || due(next_adjust_)) {
      if (next_fill_ <= next_adjust_) {
        tbr_->fill(next_fill_ - last_fill_, [this](NodeId n) { return has_demand(n); });
        last_fill_ = next_fill_;
        next_fill_ += scenario_.tbr.fill_period_us;
      } else {
        adjust(next_adjust_);
        next_adjust_ += scenario_.tbr.adjust_period_us;
      }
    }
  }

  // Queued or on-air frames, or a source ready to offer one.
  bool has_demand(NodeId n) const {
    if (on_air_ == n || !client_queue_[n.value].empty() || !tbr_->state(n).queue.empty()) return true;
    const auto t = sources_[n.value].next_offer_time(now_);
    return t && *t <= now_;
  }

  void adjust(Micros at) {
    const auto report = tbr_->adjust_rates(at);
    result_.share_sums.push_back(tbr_->share_sum());
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
      const auto& st = tbr_->states()[i];
      result_.snapshots.push_back(SchedulerSnapshot{at, st.node, st.rate_share, st.tokens_us,
                                                    report.entries[i].actual_us, st.queue.size(), st.drops});
    }
  }

  std::size_t ap_queue_len(NodeId id) const {
    return tbr_ ? tbr_->state(id).queue.size() : rr_.queue_len(id);
  }
  std::size_t ap_capacity() const { return tbr_ ? tbr_->queue_capacity() : rr_.queue_capacity(); }

  // Returns false when the AP buffer for that node is full.
  bool ap_enqueue(const Frame& f) {
    try {
      if (tbr_) tbr_->enqueue(f);
      else rr_.enqueue(f);
      return true;
    } catch (const QueueFull&) {
      ++result_.ap_drops[f.owner.value];
      return false;
    }
  }

  void route(const Frame& f) {
    if (f.direction == Direction::uplink) {
      client_queue_[f.owner.value].push_back(f);
    } else if (!ap_enqueue(f)) {
      // Overflowing transport acks wait and retry; data goes back to the source.
      if (auto again = sources_[f.owner.value].on_dropped(f)) ap_deferred_[f.owner.value].push_back(*again);
    }
  }

  static bool holds_data(const std::deque<Frame>& q) {
    return std::any_of(q.begin(), q.end(), [](const Frame& f) { return f.kind == FrameKind::data; });
  }

  void pull_sources() {
    for (std::size_t i = 0; i < sources_.size(); ++i) {
      const NodeId id{static_cast<std::uint32_t>(i)};
      auto& deferred = ap_deferred_[i];
      while (!deferred.empty() && ap_queue_len(id) < ap_capacity()) {
        if (!ap_enqueue(deferred.front())) break;
        deferred.pop_front();
      }

      auto& src = sources_[i];
      if (src.direction() == Direction::uplink) {
        // The station keeps one data frame ready for its own MAC.
        if (!holds_data(client_queue_[i])) {
          if (auto f = src.offer(now_)) client_queue_[i].push_back(*f);
        }
      } else {
        while (ap_queue_len(id) < ap_capacity()) {
          auto f = src.offer(now_);
          if (!f) break;
          if (!ap_enqueue(*f)) {
            src.on_dropped(*f);
            break;
          }
        }
      }
    }
  }

  Micros next_wakeup() const {
    Micros wake = kNever;
    if (tbr_) wake = std::min({wake, next_fill_, next_adjust_});
    for (const auto& src : sources_) {
      if (const auto t = src.next_offer_time(now_); t && *t > now_) wake = std::min(wake, *t);
    }
    return wake;
  }

  void send(const Frame& frame) {
    const auto& node = scenario_.nodes[frame.owner.value];
    const auto out = transmit(frame, node.loss_rate, scenario_.timing, rng_, now_);

    result_.log.entries.push_back(LogEntry{now_, frame.owner, frame.direction, frame.payload_bytes,
                                           frame.rate_mbps, out.attempts, out.occupancy_us, out.delivered,
                                           frame.kind});
    result_.busy_us += out.occupancy_us;
    const Micros end = out.completion_time_us;

    if (tbr_) {
      on_air_ = frame.owner;
      run_timers(end, /*inclusive=*/false);
      on_air_.reset();
      const bool blind = scenario_.tbr.blind_uplink && frame.direction == Direction::uplink;
      tbr_->complete(frame.owner, blind ? out.first_attempt_us : out.occupancy_us, end);
      result_.min_tokens_us = std::min(result_.min_tokens_us, tbr_->state(frame.owner).tokens_us);
    }
    now_ = end;

    auto& src = sources_[frame.owner.value];
    const auto follow_up = out.delivered ? src.on_delivered(frame, now_) : src.on_dropped(frame);
    if (follow_up) route(*follow_up);
  }

  SimulationResult finish() {
    result_.end_time_us = now_;
    for (const auto& s : sources_) result_.sources.push_back(s.state());
    return std::move(result_);
  }

  const Scenario& scenario_;
  Rng rng_;
  std::optional<TbrScheduler> tbr_;
  RoundRobinQueues rr_;
  std::vector<Source> sources_;
  std::vector<std::deque<Frame>> client_queue_;
  std::vector<std::deque<Frame>> ap_deferred_;
  std::vector<NodeId> contenders_;
  SimulationResult result_;
  Micros now_ = 0;
  std::optional<NodeId> on_air_;
  Micros last_fill_ = 0;
  Micros next_fill_ = 0;
  Micros next_adjust_ = 0;
};

}  // namespace

SimulationResult simulate(const Scenario& scenario) {
  scenario.validate();
  return Simulation(scenario).run();
}

std::string to_csv(const std::vector<SchedulerSnapshot>& rows, const EventLog& log) {
  std::ostringstream out;
  out << kSnapshotCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.time_us << ',' << log.id_of(r.node) << ',' << format_fixed(r.rate_share, 6) << ','
        << format_fixed(r.tokens_us, 1) << ',' << format_fixed(r.actual_us, 1) << ',' << r.queue_len << ','
        << r.drops << '\n';
  }
  return out.str();
}

}  // namespace airtime
