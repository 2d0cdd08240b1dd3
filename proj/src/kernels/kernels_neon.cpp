// AArch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include <cmath>
#include <limits>

#include "backends.hpp"

namespace pmu::kernels::detail {
namespace {

inline uint64x2_t lane_mask(const std::uint8_t* mask) {
  const uint64x2_t lo = vdupq_n_u64(mask[0] ? ~0ull : 0ull);
  return vsetq_lane_u64(mask[1] ? ~0ull : 0ull, lo, 1);
}

inline float64x2_t select(uint64x2_t keep, float64x2_t v) {
  return vreinterpretq_f64_u64(vandq_u64(keep, vreinterpretq_u64_f64(v)));
}

void masked_dual_combo(const double* w, const double* x, const double* m,
                       const std::uint8_t* mask, double rho, double* out, std::size_t n) {
  const float64x2_t vrho = vdupq_n_f64(rho);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t diff = vsubq_f64(vld1q_f64(x + i), vld1q_f64(m + i));
    const float64x2_t v = vaddq_f64(vld1q_f64(w + i), vmulq_f64(vrho, diff));
    vst1q_f64(out + i, select(lane_mask(mask + i), v));
  }
  for (; i < n; ++i) {
    const double v = w[i] + rho * (x[i] - m[i]);
    out[i] = mask[i] ? v : 0.0;
  }
}

double dual_ascent(const double* x, const double* m, const std::uint8_t* mask, double rho,
                   double* w, std::size_t n) {
  const float64x2_t vrho = vdupq_n_f64(rho);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r =
        select(lane_mask(mask + i), vsubq_f64(vld1q_f64(x + i), vld1q_f64(m + i)));
    vst1q_f64(w + i, vaddq_f64(vld1q_f64(w + i), vmulq_f64(vrho, r)));
    acc = vaddq_f64(acc, vmulq_f64(r, r));
  }
  double ss = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double r = mask[i] ? x[i] - m[i] : 0.0;
    w[i] = w[i] + rho * r;
    ss += r * r;
  }
  return ss;
}

void masked_residual(const double* x, const double* m, const std::uint8_t* mask, double* out,
                     std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, select(lane_mask(mask + i), vsubq_f64(vld1q_f64(x + i), vld1q_f64(m + i))));
  for (; i < n; ++i) out[i] = mask[i] ? x[i] - m[i] : 0.0;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double ss = vaddvq_f64(acc);
  for (; i < n; ++i) {
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
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t err = vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const uint64x2_t gone =
        vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(lane_mask(mask + i))));
    acc = vaddq_f64(acc, select(gone, err));
    count += (mask[i] ? 0 : 1) + (mask[i + 1] ? 0 : 1);
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
    if (!mask[i]) {
      sum += std::fabs(a[i] - b[i]);
      ++count;
    }
  }
  *missing = count;
  return sum;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{Backend::kNeon, "neon",          masked_dual_combo,
                                 dual_ascent,    masked_residual, squared_distance,
                                 max_abs,        missing_abs_error};
  return table;
}

}  // namespace pmu::kernels::detail
