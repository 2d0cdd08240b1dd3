#pragma once

// Reproducible random streams.
//
// Engine: std::mt19937_64 (its output sequence is fixed by the C++ standard).
// Uniform:  u = (next() >> 11) * 2^-53, in [0, 1).
// Gaussian: Box-Muller on two uniforms, u1 mapped to (0, 1] as 1 - u:
//           z0 = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
//           z1 = sqrt(-2 ln(1 - u1)) * sin(2 pi u2)
//           z0 is returned first, z1 on the following call.
// Seed mixing: SplitMix64 finalizer chained over the inputs (see mix_seed).

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pmu {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// h = splitmix64(base); then h = splitmix64(h ^ part) for each part in order.
std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double gaussian();
  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pmu
