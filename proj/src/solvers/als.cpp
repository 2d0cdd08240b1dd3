#include "pmu/als.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pmu/error.hpp"
#include "pmu/kernels.hpp"
#include "pmu/rng.hpp"

namespace pmu {
namespace {

using IndexLists = std::vector<std::vector<Index>>;

// Observed column indices per row, and observed row indices per column.
void observed_indices(const MaskBits& bits, IndexLists& by_row, IndexLists& by_col) {
  by_row.assign(static_cast<std::size_t>(bits.rows()), {});
  by_col.assign(static_cast<std::size_t>(bits.cols()), {});
  for (Index c = 0; c < bits.cols(); ++c)
    for (Index r = 0; r < bits.rows(); ++r)
      if (bits(r, c)) {
        by_row[static_cast<std::size_t>(r)].push_back(c);
        by_col[static_cast<std::size_t>(c)].push_back(r);
      }
}

// For each k: target.col(k) = argmin_x sum_{j in obs[k]} (x . fixed.col(j) - y_kj)^2 + lambda |x|^2,
// where y_kj = values(k, j) (rows_of_values) or values(j, k) (columns).
void ridge_sweep(MatrixXd& target, const MatrixXd& fixed, const MatrixXd& values,
                 const IndexLists& obs, bool rows_of_values, double lambda) {
  const Index r = fixed.rows();
  MatrixXd gathered;
  Eigen::VectorXd y;
  MatrixXd gram(r, r);
  Eigen::VectorXd rhs(r);
  Eigen::LLT<MatrixXd> llt(r);
  for (Index k = 0; k < target.cols(); ++k) {
    const auto& idx = obs[static_cast<std::size_t>(k)];
    const auto count = static_cast<Index>(idx.size());
    if (count == 0) {
      target.col(k).setZero();
      continue;
    }
    gathered.resize(r, count);
    y.resize(count);
    for (Index t = 0; t < count; ++t) {
      const Index j = idx[static_cast<std::size_t>(t)];
      gathered.col(t) = fixed.col(j);
      y(t) = rows_of_values ? values(k, j) : values(j, k);
    }
    gram.noalias() = gathered * gathered.transpose();
    gram.diagonal().array() += lambda;
    rhs.noalias() = gathered * y;
    llt.compute(gram);
    target.col(k) = llt.solve(rhs);
  }
}

double masked_rss(const MatrixXd& xhat, const ObservedMatrix& observed, MatrixXd& scratch) {
  scratch.resize(xhat.rows(), xhat.cols());
  const auto n = static_cast<std::size_t>(xhat.size());
  kernels::active().masked_residual(xhat.data(), observed.values().eigen().data(),
                                    observed.mask().bits().data(), scratch.data(), n);
  return scratch.squaredNorm();
}

}  // namespace

void AlsConfig::validate() const {
  if (rank < 1) throw ParameterError("ALS rank must be at least 1");
  if (!(lambda > 0.0)) throw ParameterError("ALS lambda must be positive");
  if (max_iters < 1) throw ParameterError("ALS max_iters must be at least 1");
  if (!(tol > 0.0)) throw ParameterError("ALS tol must be positive");
}

double als_objective(const MatrixXd& a, const MatrixXd& b, const ObservedMatrix& observed,
                     double lambda) {
  MatrixXd xhat = a.transpose() * b;
  MatrixXd scratch;
  return 0.5 * masked_rss(xhat, observed, scratch) +
         0.5 * lambda * (a.squaredNorm() + b.squaredNorm());
}

RecoveryResult als_complete(const ObservedMatrix& observed, const AlsConfig& cfg) {
  cfg.validate();
  const Index n1 = observed.rows();
  const Index n2 = observed.cols();
  if (cfg.rank > std::min(n1, n2))
    throw ParameterError("ALS rank " + std::to_string(cfg.rank) + " exceeds min(rows, cols) = " +
                         std::to_string(std::min(n1, n2)));
  if (observed.mask().none_observed())
    throw DegenerateInputError("nothing observed: every entry of the mask is 0");

  const auto start = std::chrono::steady_clock::now();
  const MatrixXd& m = observed.values().eigen();
  IndexLists by_row, by_col;
  observed_indices(observed.mask().bits(), by_row, by_col);

  Rng rng(cfg.init_seed);
  const double sd = 1.0 / std::sqrt(static_cast<double>(cfg.rank));
  MatrixXd a(cfg.rank, n1), b(cfg.rank, n2);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.gaussian(0.0, sd);
  for (Index i = 0; i < b.size(); ++i) b.data()[i] = rng.gaussian(0.0, sd);

  RecoveryResult out;
  MatrixXd scratch;
  MatrixXd x_prev = a.transpose() * b;
  MatrixXd x_next;
  auto objective = [&](const MatrixXd& xhat) {
    return 0.5 * masked_rss(xhat, observed, scratch) +
           0.5 * cfg.lambda * (a.squaredNorm() + b.squaredNorm());
  };
  double f_prev = objective(x_prev);
  if (cfg.record_objective) out.objective_history.push_back(f_prev);

  for (int it = 0; it < cfg.max_iters; ++it) {
    ridge_sweep(a, b, m, by_row, /*rows_of_values=*/true, cfg.lambda);
    if (cfg.record_objective) out.objective_history.push_back(objective(a.transpose() * b));
    ridge_sweep(b, a, m, by_col, /*rows_of_values=*/false, cfg.lambda);

    x_next.noalias() = a.transpose() * b;
    if (!x_next.allFinite())
      throw DivergenceError("ALS produced non-finite factors at iteration " +
                            std::to_string(it + 1));
    const double f = objective(x_next);
    if (cfg.record_objective) out.objective_history.push_back(f);
    out.residual_history.push_back((x_next - x_prev).norm());
    out.iterations = it + 1;
    x_prev.swap(x_next);

    const bool done = std::abs(f_prev - f) <= cfg.tol * f_prev;
    f_prev = f;
    if (done) {
      out.converged = true;
      break;
    }
  }

  if (cfg.clamp_observed) clamp_observed_entries(x_prev, observed);
  out.xhat = DenseMatrix(std::move(x_prev));
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace pmu
