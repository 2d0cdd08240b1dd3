#include "pmu/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "pmu/error.hpp"
#include "pmu/kernels.hpp"

namespace pmu {

std::size_t SingularSpectrum::numerical_rank() const {
  if (values.empty() || values.front() <= 0.0) return 0;
  const double cutoff = kZeroSingularTolerance * values.front();
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double s) { return s >= cutoff; }));
}

DenseMatrix masked_residual(const DenseMatrix& x, const DenseMatrix& m, const MaskMatrix& mask) {
  require_same_shape(x, m, "masked_residual");
  require_same_shape(x, mask, "masked_residual");
  DenseMatrix out(x.rows(), x.cols());
  kernels::active().masked_residual(x.eigen().data(), m.eigen().data(), mask.bits().data(),
                                    out.eigen().data(), static_cast<std::size_t>(x.size()));
  return out;
}

double frobenius_norm(const DenseMatrix& x) { return x.eigen().norm(); }

SingularSpectrum singular_values(const DenseMatrix& x) {
  Eigen::BDCSVD<MatrixXd> svd(x.eigen());
  const auto& s = svd.singularValues();
  SingularSpectrum out;
  out.values.assign(s.data(), s.data() + s.size());
  // Eigen already sorts descending; keep the guarantee explicit.
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  for (double& v : out.values) v = std::max(v, 0.0);
  return out;
}

int approximate_rank(const SingularSpectrum& spectrum, double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw ParameterError("beta must lie in (0, 1], got " + std::to_string(beta));
  if (spectrum.values.empty()) throw ParameterError("empty singular spectrum");

  const std::size_t kept = spectrum.numerical_rank();
  if (kept == 0) return 0;

  double total = 0.0;
  for (std::size_t i = 0; i < kept; ++i) total += spectrum.values[i] * spectrum.values[i];
  const double root_total = std::sqrt(total);

  double partial = 0.0;
  for (std::size_t r = 0; r < kept; ++r) {
    partial += spectrum.values[r] * spectrum.values[r];
    if (std::sqrt(partial) / root_total >= beta) return static_cast<int>(r + 1);
  }
  return static_cast<int>(kept);
}

double mae_missing(const DenseMatrix& xhat, const DenseMatrix& x, const MaskMatrix& mask) {
  require_same_shape(xhat, x, "mae_missing");
  require_same_shape(xhat, mask, "mae_missing");
  std::size_t missing = 0;
  const double sum = kernels::active().missing_abs_error(
      xhat.eigen().data(), x.eigen().data(), mask.bits().data(),
      static_cast<std::size_t>(x.size()), &missing);
  if (missing == 0) throw UndefinedMetricError("MAE is undefined: no missing entries");
  return sum / static_cast<double>(missing);
}

}  // namespace pmu
