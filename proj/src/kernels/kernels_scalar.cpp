#include <cmath>
#include <limits>

#include "backends.hpp"

namespace pmu::kernels::detail {
namespace {

void masked_dual_combo(const double* w, const double* x, const double* m,
                       const std::uint8_t* mask, double rho, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = w[i] + rho * (x[i] - m[i]);
    out[i] = mask[i] ? v : 0.0;
  }
}

double dual_ascent(const double* x, const double* m, const std::uint8_t* mask, double rho,
                   double* w, std::size_t n) {
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = mask[i] ? x[i] - m[i] : 0.0;
    w[i] = w[i] + rho * r;
    ss += r * r;
  }
  return ss;
}

void masked_residual(const double* x, const double* m, const std::uint8_t* mask, double* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mask[i] ? x[i] - m[i] : 0.0;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    ss += d * d;
  }
  return ss;
}

double max_abs(const double* a, std::size_t n) {
  double mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i]);
    if (!(v <= std::numeric_limits<double>::max())) return std::numeric_limits<double>::infinity();
    if (v > mx) mx = v;
  }
  return mx;
}

double missing_abs_error(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n, std::size_t* missing) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask[i]) {
      sum += std::fabs(a[i] - b[i]);
      ++count;
    }
  }
  *missing = count;
  return sum;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Backend::kScalar, "scalar",        masked_dual_combo,
                                 dual_ascent,      masked_residual, squared_distance,
                                 max_abs,          missing_abs_error};
  return table;
}

}  // namespace pmu::kernels::detail
