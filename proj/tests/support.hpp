#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "pmu/dense.hpp"

namespace testing {

inline pmu::DenseMatrix random_matrix(pmu::Index rows, pmu::Index cols, unsigned seed,
                                      double lo = -1.0, double hi = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  pmu::MatrixXd m(rows, cols);
  for (pmu::Index c = 0; c < cols; ++c)
    for (pmu::Index r = 0; r < rows; ++r) m(r, c) = dist(gen);
  return pmu::DenseMatrix(std::move(m));
}

inline pmu::MaskMatrix random_mask(pmu::Index rows, pmu::Index cols, double p, unsigned seed) {
  std::mt19937 gen(seed);
  std::bernoulli_distribution keep(p);
  pmu::MaskMatrix mask(rows, cols, 1);
  for (pmu::Index c = 0; c < cols; ++c)
    for (pmu::Index r = 0; r < rows; ++r) mask.set(r, c, keep(gen));
  return mask;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("pmu_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
