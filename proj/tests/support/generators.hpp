#pragma once

// Hand-rolled generators for property tests. Everything draws from
// airtime::Rng so a failing case is reproducible from its seed.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "airtime/analytic.hpp"
#include "airtime/rng.hpp"
#include "airtime/scenario.hpp"

namespace airtime::testing {

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

inline double pick_rate(Rng& rng) { return kSupportedRates[rng.uniform_below(std::size(kSupportedRates))]; }

// A node mix with arbitrary baselines. Each node gets a private fictitious
// rate key so gamma can be drawn freely.
struct GammaMix {
  std::vector<NodeSpec> nodes;
  BaselineTable table{"generated"};
  std::vector<double> gamma;
};

inline GammaMix random_gamma_mix(Rng& rng, int n, bool all_equal, double lo = 0.5, double hi = 6.0) {
  GammaMix mix;
  const double shared = uniform(rng, lo, hi);
  for (int i = 0; i < n; ++i) {
    const double g = all_equal ? shared : uniform(rng, lo, hi);
    NodeSpec node;
    node.id = "n" + std::to_string(i);
    node.rate_mbps = 100.0 + i;
    node.packet_bytes = 1500;
    mix.table.insert(node.rate_mbps, node.packet_bytes, g);
    mix.nodes.push_back(node);
    mix.gamma.push_back(g);
  }
  return mix;
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.uniform_below(i)]);
  return p;
}

// Saturating or window stations at random rates, short enough for a unit test.
inline Scenario random_scenario(Rng& rng, SchedulerKind scheduler, Micros duration_us) {
  Scenario s;
  s.scheduler = scheduler;
  s.duration_us = duration_us;
  s.seed = rng.next();
  const int n = uniform_int(rng, 1, 5);
  for (int i = 0; i < n; ++i) {
    NodeSpec node;
    node.id = "s" + std::to_string(i);
    node.rate_mbps = pick_rate(rng);
    node.packet_bytes = uniform_int(rng, 200, 1500);
    node.loss_rate = rng.bernoulli(0.3) ? uniform(rng, 0.0, 0.3) : 0.0;
    node.direction = rng.bernoulli(0.5) ? Direction::uplink : Direction::downlink;
    switch (rng.uniform_below(4)) {
      case 0: node.source = SourceSpec::saturating(); break;
      case 1: node.source = SourceSpec::rate_limited(uniform(rng, 0.1, 3.0)); break;
      case 2: node.source = SourceSpec::task(node.packet_bytes * uniform_int(rng, 1, 300)); break;
      default: node.source = SourceSpec::window(uniform_int(rng, 1, 8)); break;
    }
    s.nodes.push_back(node);
  }
  return s;
}

}  // namespace airtime::testing
