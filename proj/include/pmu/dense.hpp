#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace pmu {

using Index = Eigen::Index;
using MatrixXd = Eigen::MatrixXd;
using MaskBits = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Real matrix with at least one row and column and only finite entries.
/// Storage is column-major (Eigen default).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);
  explicit DenseMatrix(MatrixXd values);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  Index size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.size() == 0; }

  double operator()(Index r, Index c) const { return values_(r, c); }
  double& operator()(Index r, Index c) { return values_(r, c); }

  const MatrixXd& eigen() const noexcept { return values_; }
  MatrixXd& eigen() noexcept { return values_; }

  std::span<const double> flat() const noexcept {
    return {values_.data(), static_cast<std::size_t>(values_.size())};
  }

  DenseMatrix transposed() const { return DenseMatrix(MatrixXd(values_.transpose())); }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.values_ == b.values_;
  }

 private:
  MatrixXd values_;
};

/// 0/1 structural identity: 1 where the entry was observed.
class MaskMatrix {
 public:
  MaskMatrix() = default;
  MaskMatrix(Index rows, Index cols, std::uint8_t fill = 1);
  explicit MaskMatrix(MaskBits bits);
  MaskMatrix(std::initializer_list<std::initializer_list<int>> rows);

  Index rows() const noexcept { return bits_.rows(); }
  Index cols() const noexcept { return bits_.cols(); }
  Index size() const noexcept { return bits_.size(); }

  bool observed(Index r, Index c) const { return bits_(r, c) != 0; }
  void set(Index r, Index c, bool observed) { bits_(r, c) = observed ? 1 : 0; }

  Index observed_count() const;
  Index missing_count() const { return size() - observed_count(); }
  bool all_observed() const { return missing_count() == 0; }
  bool none_observed() const { return observed_count() == 0; }
  /// Index of the first row whose every entry is missing, or -1.
  Index first_empty_row() const;

  const MaskBits& bits() const noexcept { return bits_; }
  std::span<const std::uint8_t> flat() const noexcept {
    return {bits_.data(), static_cast<std::size_t>(bits_.size())};
  }

  MaskMatrix transposed() const { return MaskMatrix(MaskBits(bits_.transpose())); }

  friend bool operator==(const MaskMatrix& a, const MaskMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.bits_ == b.bits_;
  }

 private:
  MaskBits bits_;
};

/// Observed data M with its mask. Missing entries always hold zero; a
/// genuine zero measurement keeps mask = 1.
class ObservedMatrix {
 public:
  ObservedMatrix() = default;
  /// Zeroes `values` wherever `mask` is 0.
  ObservedMatrix(DenseMatrix values, MaskMatrix mask);
  /// Fully observed.
  explicit ObservedMatrix(DenseMatrix values);

  const DenseMatrix& values() const noexcept { return values_; }
  const MaskMatrix& mask() const noexcept { return mask_; }
  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }

  ObservedMatrix transposed() const;

  friend bool operator==(const ObservedMatrix& a, const ObservedMatrix& b) {
    return a.values_ == b.values_ && a.mask_ == b.mask_;
  }

 private:
  DenseMatrix values_;
  MaskMatrix mask_;
};

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what);
void require_same_shape(const DenseMatrix& a, const MaskMatrix& m, const char* what);
std::string shape_string(Index rows, Index cols);

}  // namespace pmu
