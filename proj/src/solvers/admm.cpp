#include "pmu/admm.hpp"

#include <cmath>
#include <string>

#include "pmu/error.hpp"
#include "pmu/kernels.hpp"
#include "pmu/rng.hpp"

namespace pmu {
namespace {

constexpr double kDivergenceLimit = 1e12;

void fill_gaussian(MatrixXd& m, Rng& rng, double stddev) {
  double* p = m.data();
  for (Index i = 0; i < m.size(); ++i) p[i] = rng.gaussian(0.0, stddev);
}

}  // namespace

void AdmmConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("rho must be positive");
  if (!(step > 0.0 && step <= 1.0)) throw ParameterError("step must lie in (0, 1]");
  if (eps && !(*eps > 0.0)) throw ParameterError("eps must be positive");
  if (k_max < 1) throw ParameterError("k_max must be at least 1");
  if (!(init_scale > 0.0) || !std::isfinite(init_scale))
    throw ParameterError("init_scale must be positive");
  if (!(progress_guard > 0.0)) throw ParameterError("progress_guard must be positive");
}

void clamp_observed_entries(MatrixXd& xhat, const ObservedMatrix& observed) {
  const auto& bits = observed.mask().bits();
  const auto& m = observed.values().eigen();
  for (Index c = 0; c < xhat.cols(); ++c)
    for (Index r = 0; r < xhat.rows(); ++r)
      if (bits(r, c)) xhat(r, c) = m(r, c);
}

AdmmSolver::AdmmSolver(const ObservedMatrix& observed, const AdmmConfig& cfg)
    : cfg_(cfg), original_(observed) {
  cfg_.validate();
  if (observed.mask().none_observed())
    throw DegenerateInputError("nothing observed: every entry of the mask is 0");

  transposed_ = observed.rows() < observed.cols();
  if (transposed_) {
    m_ = observed.values().eigen().transpose();
    mask_ = observed.mask().bits().transpose();
  } else {
    m_ = observed.values().eigen();
    mask_ = observed.mask().bits();
  }
  const Index n1 = m_.rows();
  const Index n2 = m_.cols();

  Rng rng(cfg_.init_seed);
  const double sd = cfg_.init_scale / std::sqrt(static_cast<double>(n2));
  state_.a.resize(n2, n1);
  state_.b.resize(n2, n2);
  fill_gaussian(state_.a, rng, sd);
  fill_gaussian(state_.b, rng, sd);
  state_.w = MatrixXd::Zero(n1, n2);
  // A = B = 0 is a fixed point of the sweep.
  if (state_.a.isZero(0.0) || state_.b.isZero(0.0))
    throw ParameterError("initial factors are identically zero");

  x_.noalias() = state_.a.transpose() * state_.b;
  g_.resize(n1, n2);

  const double m_norm = m_.norm();
  eps_ = cfg_.eps.value_or(1e-4 * std::max(1.0, m_norm));
  guard_limit_ = cfg_.progress_guard * m_norm;
}

bool AdmmSolver::step() {
  const auto& kern = kernels::active();
  const auto n = static_cast<std::size_t>(m_.size());
  const double rho = cfg_.rho;
  const double tau = cfg_.step;
  auto& a = state_.a;
  auto& b = state_.b;
  auto& w = state_.w;

  // A: grad = A + B G^T with G = (w + rho (A^T B - M)) ⊙ I at (A^k, B^k).
  kern.masked_dual_combo(w.data(), x_.data(), m_.data(), mask_.data(), rho, g_.data(), n);
  scratch_.noalias() = b * g_.transpose();
  a = (1.0 - tau) * a - tau * scratch_;

  // B: same with A^{k+1}, B^k.
  MatrixXd y;
  y.noalias() = a.transpose() * b;
  kern.masked_dual_combo(w.data(), y.data(), m_.data(), mask_.data(), rho, g_.data(), n);
  scratch_.noalias() = a * g_;
  b = (1.0 - tau) * b - tau * scratch_;

  // Dual ascent on the masked residual of A^{k+1}, B^{k+1}.
  y.noalias() = a.transpose() * b;
  const double residual = std::sqrt(kern.dual_ascent(y.data(), m_.data(), mask_.data(), rho,
                                                     w.data(), n));
  const double change = std::sqrt(kern.squared_distance(y.data(), x_.data(), n));
  x_.swap(y);
  ++state_.k;
  history_.push_back(change);

  check_finite();

  if (change < eps_ && residual <= guard_limit_) {
    converged_ = true;
    return true;
  }
  return state_.k >= cfg_.k_max;
}

void AdmmSolver::check_finite() const {
  const auto& kern = kernels::active();
  auto over = [&](const MatrixXd& m) {
    return kern.max_abs(m.data(), static_cast<std::size_t>(m.size())) > kDivergenceLimit;
  };
  if (over(state_.a) || over(state_.b) || over(state_.w))
    throw DivergenceError("ADMM diverged at iteration " + std::to_string(state_.k) +
                          " (an iterate exceeded 1e12 or became non-finite); rho = " +
                          std::to_string(cfg_.rho) + " is likely too large for this data");
}

DenseMatrix AdmmSolver::estimate() const {
  if (transposed_) return DenseMatrix(MatrixXd(x_.transpose()));
  return DenseMatrix(x_);
}

RecoveryResult AdmmSolver::run() {
  const auto start = std::chrono::steady_clock::now();
  while (!step()) {
  }
  RecoveryResult out;
  MatrixXd xhat = transposed_ ? MatrixXd(x_.transpose()) : x_;
  if (cfg_.clamp_observed) clamp_observed_entries(xhat, original_);
  out.xhat = DenseMatrix(std::move(xhat));
  out.converged = converged_;
  out.iterations = state_.k;
  out.residual_history = history_;
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

RecoveryResult admm_complete(const ObservedMatrix& observed, const AdmmConfig& cfg) {
  AdmmSolver solver(observed, cfg);
  return solver.run();
}

}  // namespace pmu
