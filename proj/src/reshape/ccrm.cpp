#include "pmu/ccrm.hpp"

#include <string>

#include "pmu/error.hpp"

namespace pmu {
namespace {

template <typename Out, typename In>
void scatter_forward(Out& out, const In& in, const ReshapePlan& plan) {
  for (Index j = 0; j < plan.n2; ++j)
    for (Index s = 0; s < plan.n_star; ++s)
      out.col(j * plan.n_star + s) = in.col(j).segment(s * plan.seg_len, plan.seg_len);
}

template <typename Out, typename In>
void gather_back(Out& out, const In& in, const ReshapePlan& plan) {
  for (Index j = 0; j < plan.n2; ++j)
    for (Index s = 0; s < plan.n_star; ++s)
      out.col(j).segment(s * plan.seg_len, plan.seg_len) = in.col(j * plan.n_star + s);
}

void require_reshaped_shape(Index rows, Index cols, const ReshapePlan& plan) {
  if (rows != plan.reshaped_rows() || cols != plan.reshaped_cols())
    throw ShapeError("ccrm_inverse: got " + shape_string(rows, cols) + ", plan expects " +
                     shape_string(plan.reshaped_rows(), plan.reshaped_cols()));
}

void require_original_shape(Index rows, Index cols, const ReshapePlan& plan) {
  if (rows != plan.n1 || cols != plan.n2)
    throw ShapeError("ccrm_reshape: got " + shape_string(rows, cols) + ", plan expects " +
                     shape_string(plan.n1, plan.n2));
}

}  // namespace

Index select_cut_factor(Index n1, Index n2) {
  if (n1 < 1 || n2 < 1) return 1;
  for (Index d = n1; d >= 1; --d)
    if (n1 % d == 0 && n1 / d >= n2) return d;
  return 1;
}

ReshapePlan make_plan(Index n1, Index n2, Index n_star) {
  if (n1 < 1 || n2 < 1) throw ShapeError("reshape plan needs a non-empty matrix");
  if (n_star < 1 || n1 % n_star != 0)
    throw ParameterError("cut factor " + std::to_string(n_star) + " does not divide " +
                         std::to_string(n1) + " rows");
  return ReshapePlan{n1, n2, n_star, n1 / n_star};
}

DenseMatrix ccrm_reshape(const DenseMatrix& x, const ReshapePlan& plan) {
  require_original_shape(x.rows(), x.cols(), plan);
  MatrixXd out(plan.reshaped_rows(), plan.reshaped_cols());
  scatter_forward(out, x.eigen(), plan);
  return DenseMatrix(std::move(out));
}

MaskMatrix ccrm_reshape(const MaskMatrix& mask, const ReshapePlan& plan) {
  require_original_shape(mask.rows(), mask.cols(), plan);
  MaskBits out(plan.reshaped_rows(), plan.reshaped_cols());
  scatter_forward(out, mask.bits(), plan);
  return MaskMatrix(std::move(out));
}

std::pair<ObservedMatrix, ReshapePlan> ccrm_reshape(const ObservedMatrix& observed,
                                                    Index n_star) {
  const ReshapePlan plan = make_plan(observed.rows(), observed.cols(), n_star);
  return {ObservedMatrix(ccrm_reshape(observed.values(), plan),
                         ccrm_reshape(observed.mask(), plan)),
          plan};
}

DenseMatrix ccrm_inverse(const DenseMatrix& x, const ReshapePlan& plan) {
  require_reshaped_shape(x.rows(), x.cols(), plan);
  MatrixXd out(plan.n1, plan.n2);
  gather_back(out, x.eigen(), plan);
  return DenseMatrix(std::move(out));
}

MaskMatrix ccrm_inverse(const MaskMatrix& mask, const ReshapePlan& plan) {
  require_reshaped_shape(mask.rows(), mask.cols(), plan);
  MaskBits out(plan.n1, plan.n2);
  gather_back(out, mask.bits(), plan);
  return MaskMatrix(std::move(out));
}

}  // namespace pmu
