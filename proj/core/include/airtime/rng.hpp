#pragma once

#include <cstdint>
#include <random>

namespace airtime {

/// Seeded random source for the simulator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The mapping to integers and reals is done here rather than with
/// <random> distributions, which are implementation-defined, so a given seed
/// yields the same event log with any conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace airtime
