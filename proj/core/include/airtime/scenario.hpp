#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "airtime/mac.hpp"
#include "airtime/node.hpp"
#include "airtime/tbr.hpp"

namespace airtime {

enum class SchedulerKind { dcf, tbr };

constexpr std::string_view to_string(SchedulerKind k) { return k == SchedulerKind::dcf ? "dcf" : "tbr"; }

/// A complete experiment: who competes, under which AP regime, for how long.
struct Scenario {
  SchedulerKind scheduler = SchedulerKind::dcf;
  Micros duration_us = 10'000'000;
  std::uint64_t seed = 1;
  TimingConstants timing;
  TbrConfig tbr;
  std::vector<NodeSpec> nodes;

  /// Throws InvalidScenario naming the first violated constraint.
  void validate() const;

  bool all_tasks() const;
};

}  // namespace airtime
