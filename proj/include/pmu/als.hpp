#pragma once

#include <cstdint>

#include "pmu/dense.hpp"
#include "pmu/recovery.hpp"

namespace pmu {

/// Rank-r alternating ridge least squares on
///   1/2 ||(A^T B - M) ⊙ I||_F^2 + lambda/2 (||A||_F^2 + ||B||_F^2),
/// A: r x n1, B: r x n2.
struct AlsConfig {
  int rank = 20;
  double lambda = 1.5;
  int max_iters = 500;
  /// Stop when |f_prev - f| <= tol * f_prev over one full sweep.
  double tol = 1e-3;
  std::uint64_t init_seed = 1;
  bool clamp_observed = false;
  bool record_objective = false;

  void validate() const;
};

double als_objective(const MatrixXd& a, const MatrixXd& b, const ObservedMatrix& observed,
                     double lambda);

RecoveryResult als_complete(const ObservedMatrix& observed, const AlsConfig& cfg = {});

}  // namespace pmu
