#pragma once

#include <cstdint>
#include <optional>

#include "pmu/dense.hpp"
#include "pmu/recovery.hpp"

namespace pmu {

/// Settings for the ADMM completion solver.
///
/// Each sweep takes a step of length `step` along the negative gradient of
/// the augmented Lagrangian in A, then in B, then raises the dual by
/// rho times the masked residual. `step = 1` is the undamped update
/// A <- -B (w ⊙ I)^T - rho B ((A^T B - M) ⊙ I)^T, which collapses toward
/// the zero fixed point on most inputs; 0.5 is stable over the settings
/// the test suite covers.
struct AdmmConfig {
  double rho = 7.5e-4;
  double step = 0.5;
  /// Stop threshold on ||A'^T B' - A^T B||_F. Unset: 1e-4 * max(1, ||M||_F).
  std::optional<double> eps;
  int k_max = 5000;
  std::uint64_t init_seed = 1;
  double init_scale = 1.0;
  /// The eps test only counts once ||(Xhat - M) ⊙ I||_F <= guard * ||M ⊙ I||_F,
  /// so the early collapse toward zero is not mistaken for convergence.
  double progress_guard = 0.5;
  bool clamp_observed = false;

  void validate() const;
};

/// Iterates live in the solver's internal orientation (rows >= cols).
struct SolverState {
  MatrixXd a;  // n2 x n1
  MatrixXd b;  // n2 x n2
  MatrixXd w;  // n1 x n2, dual variables
  int k = 0;
};

class AdmmSolver {
 public:
  AdmmSolver(const ObservedMatrix& observed, const AdmmConfig& cfg);

  /// One sweep. Returns true once the stopping rule has fired.
  bool step();
  /// Runs to convergence or k_max.
  RecoveryResult run();

  const SolverState& state() const noexcept { return state_; }
  bool transposed() const noexcept { return transposed_; }
  double eps() const noexcept { return eps_; }
  const std::vector<double>& residual_history() const noexcept { return history_; }
  /// Current A^T B in the caller's orientation.
  DenseMatrix estimate() const;

 private:
  void check_finite() const;

  AdmmConfig cfg_;
  bool transposed_ = false;
  MatrixXd m_;      // internal orientation
  MaskBits mask_;   // internal orientation
  ObservedMatrix original_;
  SolverState state_;
  MatrixXd x_;       // A^T B at the current iterate
  MatrixXd scratch_;
  MatrixXd g_;
  double eps_ = 0.0;
  double guard_limit_ = 0.0;
  bool converged_ = false;
  std::vector<double> history_;
};

RecoveryResult admm_complete(const ObservedMatrix& observed, const AdmmConfig& cfg = {});

}  // namespace pmu
