#include "pmu/dense.hpp"

#include <cmath>

#include "pmu/error.hpp"

namespace pmu {
namespace {

void require_positive_shape(Index rows, Index cols) {
  if (rows < 1 || cols < 1)
    throw ShapeError("matrix must have at least one row and column, got " +
                     shape_string(rows, cols));
}

void require_finite(const MatrixXd& m) {
  if (!m.allFinite()) throw ParameterError("matrix contains NaN or infinite entries");
}

}  // namespace

std::string shape_string(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

DenseMatrix::DenseMatrix(Index rows, Index cols) {
  require_positive_shape(rows, cols);
  values_ = MatrixXd::Zero(rows, cols);
}

DenseMatrix::DenseMatrix(MatrixXd values) : values_(std::move(values)) {
  require_positive_shape(values_.rows(), values_.cols());
  require_finite(values_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto nrows = static_cast<Index>(rows.size());
  const auto ncols = nrows ? static_cast<Index>(rows.begin()->size()) : 0;
  require_positive_shape(nrows, ncols);
  values_.resize(nrows, ncols);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != ncols) throw ShapeError("ragged initializer list");
    Index c = 0;
    for (double v : row) values_(r, c++) = v;
    ++r;
  }
  require_finite(values_);
}

MaskMatrix::MaskMatrix(Index rows, Index cols, std::uint8_t fill) {
  require_positive_shape(rows, cols);
  if (fill > 1) throw ParameterError("mask bits must be 0 or 1");
  bits_ = MaskBits::Constant(rows, cols, fill);
}

MaskMatrix::MaskMatrix(MaskBits bits) : bits_(std::move(bits)) {
  require_positive_shape(bits_.rows(), bits_.cols());
  if ((bits_.array() > 1).any()) throw ParameterError("mask bits must be 0 or 1");
}

MaskMatrix::MaskMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  const auto nrows = static_cast<Index>(rows.size());
  const auto ncols = nrows ? static_cast<Index>(rows.begin()->size()) : 0;
  require_positive_shape(nrows, ncols);
  bits_.resize(nrows, ncols);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != ncols) throw ShapeError("ragged initializer list");
    Index c = 0;
    for (int v : row) {
      if (v != 0 && v != 1) throw ParameterError("mask bits must be 0 or 1");
      bits_(r, c++) = static_cast<std::uint8_t>(v);
    }
    ++r;
  }
}

Index MaskMatrix::observed_count() const {
  Index n = 0;
  for (std::uint8_t b : flat()) n += b;
  return n;
}

Index MaskMatrix::first_empty_row() const {
  for (Index r = 0; r < rows(); ++r)
    if ((bits_.row(r).array() == 0).all()) return r;
  return -1;
}

ObservedMatrix::ObservedMatrix(DenseMatrix values, MaskMatrix mask)
    : values_(std::move(values)), mask_(std::move(mask)) {
  require_same_shape(values_, mask_, "observed matrix");
  double* v = values_.eigen().data();
  const std::uint8_t* b = mask_.bits().data();
  const Index n = values_.eigen().size();
  for (Index i = 0; i < n; ++i) v[i] = b[i] ? v[i] : 0.0;
}

ObservedMatrix::ObservedMatrix(DenseMatrix values)
    : values_(std::move(values)), mask_(values_.rows(), values_.cols(), 1) {}

ObservedMatrix ObservedMatrix::transposed() const {
  return ObservedMatrix(values_.transposed(), mask_.transposed());
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shape mismatch " + shape_string(a.rows(), a.cols()) +
                     " vs " + shape_string(b.rows(), b.cols()));
}

void require_same_shape(const DenseMatrix& a, const MaskMatrix& m, const char* what) {
  if (a.rows() != m.rows() || a.cols() != m.cols())
    throw ShapeError(std::string(what) + ": value/mask shape mismatch " +
                     shape_string(a.rows(), a.cols()) + " vs " + shape_string(m.rows(), m.cols()));
}

}  // namespace pmu
