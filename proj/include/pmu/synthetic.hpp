#pragma once

// Synthetic PMU-like data and the three masking regimes.
//
// Ground truth for a ScenarioSpec:
//
//   X = sum_{p=1..rank} c_p u_p v_p^T + N
//
//   u_1(t) = 1 + [t >= t0] a exp(-zeta (t - t0)) sin(2 pi f (t - t0))   (t 1-based)
//   v_1(j) = 1 + 0.05 g_j
//   u_p, v_p (p >= 2) standard Gaussian vectors, c_p = 0.05^(p-1), c_1 = 1
//   N(t, j) = sqrt(noise_var) g_tj
//
// Draw order from Rng(seed): v_1; then u_p, v_p for p = 2..rank; then N
// column by column. With the default spec the approximate rank at
// beta = 0.995 is 1.
//
// Row and column indices in the masking helpers are 1-based.

#include <cstdint>
#include <optional>
#include <vector>

#include "pmu/dense.hpp"

namespace pmu {

struct EventSpec {
  Index onset = 4;  // 0.1 s at 30 samples/s
  double damping = 0.02;
  double frequency = 0.02;  // cycles per sample
  double amplitude = 0.05;
};

struct ScenarioSpec {
  Index rows = 1800;  // 60 s at 30 samples/s
  Index cols = 86;
  int signal_rank = 1;
  double noise_var = 0.001;
  std::optional<EventSpec> event = EventSpec{};
  std::uint64_t seed = 0;

  void validate() const;
};

DenseMatrix generate_synthetic(const ScenarioSpec& spec);

/// Every entry observed independently with probability p_observe.
/// Draws one uniform per entry, row by row.
ObservedMatrix apply_random_mask(const DenseMatrix& x, double p_observe, std::uint64_t seed);

/// Every row kept independently with probability p_row_observe.
ObservedMatrix apply_row_mask(const DenseMatrix& x, double p_row_observe, std::uint64_t seed);

struct BurstSpec {
  std::vector<Index> channels;  // 1-based, distinct
  Index t_start = 1;            // 1-based, inclusive
  Index t_end = 1;
};

/// The 9-line outage over instants 90..200.
BurstSpec default_burst();

ObservedMatrix apply_burst_mask(const DenseMatrix& x, const BurstSpec& burst);

}  // namespace pmu
