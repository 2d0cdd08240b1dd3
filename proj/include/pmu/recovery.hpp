#pragma once

#include <chrono>
#include <vector>

#include "pmu/dense.hpp"

namespace pmu {

struct RecoveryResult {
  DenseMatrix xhat;
  bool converged = false;
  int iterations = 0;
  /// ||Xhat^{k+1} - Xhat^k||_F per iteration.
  std::vector<double> residual_history;
  /// ALS only, when requested: objective at start and after every half-update.
  std::vector<double> objective_history;
  std::chrono::nanoseconds elapsed{0};

  double final_residual() const {
    return residual_history.empty() ? 0.0 : residual_history.back();
  }
  double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

/// Copies observed entries of `observed` into `xhat`.
void clamp_observed_entries(MatrixXd& xhat, const ObservedMatrix& observed);

}  // namespace pmu
