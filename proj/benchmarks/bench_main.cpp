#include <benchmark/benchmark.h>

#include "airtime/analytic.hpp"
#include "airtime/metrics.hpp"
#include "airtime/simulator.hpp"
#include "airtime/tbr.hpp"

namespace {

using namespace airtime;

Scenario saturating_pair(SchedulerKind k, Micros duration_us) {
  Scenario s;
  s.scheduler = k;
  s.duration_us = duration_us;
  for (double rate : {1.0, 11.0}) {
    NodeSpec n;
    n.id = "n" + std::to_string(s.nodes.size());
    n.rate_mbps = rate;
    s.nodes.push_back(n);
  }
  return s;
}

void BM_Simulate(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? SchedulerKind::dcf : SchedulerKind::tbr;
  const Scenario s = saturating_pair(kind, 10'000'000);
  std::size_t frames = 0;
  for (auto _ : state) {
    const auto r = simulate(s);
    frames += r.log.entries.size();
    benchmark::DoNotOptimize(r.end_time_us);
  }
  state.counters["frames/s"] = benchmark::Counter(static_cast<double>(frames), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WindowMetrics(benchmark::State& state) {
  const auto r = simulate(saturating_pair(SchedulerKind::tbr, 60'000'000));
  for (auto _ : state) benchmark::DoNotOptimize(tumbling_window_metrics(r.log, 1'000'000, r.end_time_us));
}
BENCHMARK(BM_WindowMetrics)->Unit(benchmark::kMicrosecond);

void BM_CompareRegimes(benchmark::State& state) {
  const auto table = BaselineTable::measured_80211b();
  const double rates[] = {1.0, 2.0, 5.5, 11.0};
  std::vector<NodeSpec> nodes(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i].id = "n" + std::to_string(i);
    nodes[i].rate_mbps = rates[i % 4];
  }
  for (auto _ : state) benchmark::DoNotOptimize(compare_regimes(nodes, table));
}
BENCHMARK(BM_CompareRegimes)->Arg(4)->Arg(64);

void BM_TbrDequeueComplete(benchmark::State& state) {
  TbrScheduler tbr{TbrConfig{}};
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (std::uint32_t i = 0; i < n; ++i) tbr.associate(NodeId{i});
  Frame f;
  f.payload_bytes = 1500;
  f.rate_mbps = 11;
  Micros now = 0;
  for (auto _ : state) {
    for (std::uint32_t i = 0; i < n; ++i) {
      f.owner = NodeId{i};
      if (tbr.state(f.owner).queue.empty()) tbr.enqueue(f);
    }
    tbr.fill(1500);
    if (auto next = tbr.dequeue()) tbr.complete(next->owner, 1500, now += 1500);
  }
}
BENCHMARK(BM_TbrDequeueComplete)->Arg(2)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
