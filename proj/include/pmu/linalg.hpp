#pragma once

#include <vector>

#include "pmu/dense.hpp"

namespace pmu {

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kZeroSingularTolerance = 1e-12;

struct SingularSpectrum {
  std::vector<double> values;  // descending, nonnegative

  std::size_t size() const noexcept { return values.size(); }
  /// Number of values above kZeroSingularTolerance * largest.
  std::size_t numerical_rank() const;
};

/// (X - M) ⊙ I entrywise.
DenseMatrix masked_residual(const DenseMatrix& x, const DenseMatrix& m, const MaskMatrix& mask);

double frobenius_norm(const DenseMatrix& x);

SingularSpectrum singular_values(const DenseMatrix& x);

/// Smallest r whose leading singular values carry at least a `beta` share
/// of the Frobenius norm. Returns 0 for an all-zero spectrum.
int approximate_rank(const SingularSpectrum& spectrum, double beta);

/// Mean of |xhat - x| over the positions where `mask` is 0.
double mae_missing(const DenseMatrix& xhat, const DenseMatrix& x, const MaskMatrix& mask);

}  // namespace pmu
