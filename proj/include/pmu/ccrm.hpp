#pragma once

// Cut-column reshaping. Each length-n1 column is cut into n* consecutive
// segments of length L = n1 / n*, giving an L x (n2 n*) matrix. Segments of
// one original column sit next to each other (original-column-major):
//
//   out(i, j n* + s) = in(s L + i, j)      0-based, s in [0, n*)
//
// A row that is entirely missing in the input becomes n2 n* scattered gaps
// spread over a single output row alongside observed samples from the other
// segments.

#include <utility>

#include "pmu/dense.hpp"

namespace pmu {

struct ReshapePlan {
  Index n1 = 0;
  Index n2 = 0;
  Index n_star = 1;
  Index seg_len = 0;

  Index reshaped_rows() const noexcept { return seg_len; }
  Index reshaped_cols() const noexcept { return n2 * n_star; }
  bool identity() const noexcept { return n_star == 1; }

  friend bool operator==(const ReshapePlan&, const ReshapePlan&) = default;
};

/// Largest divisor n* of n1 whose segment length n1/n* is at least n2, or 1
/// when n1 < n2. (1800, 86) -> 20; (6, 2) -> 3.
Index select_cut_factor(Index n1, Index n2);

ReshapePlan make_plan(Index n1, Index n2, Index n_star);

DenseMatrix ccrm_reshape(const DenseMatrix& x, const ReshapePlan& plan);
MaskMatrix ccrm_reshape(const MaskMatrix& mask, const ReshapePlan& plan);
std::pair<ObservedMatrix, ReshapePlan> ccrm_reshape(const ObservedMatrix& observed, Index n_star);

DenseMatrix ccrm_inverse(const DenseMatrix& x, const ReshapePlan& plan);
MaskMatrix ccrm_inverse(const MaskMatrix& mask, const ReshapePlan& plan);

}  // namespace pmu
