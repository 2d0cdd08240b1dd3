// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "backends.hpp"

namespace pmu::kernels::detail {
namespace {

// Four mask bytes -> four all-ones/all-zeros double lanes.
inline __m256d lane_mask(const std::uint8_t* mask) {
  std::uint32_t packed;
  std::memcpy(&packed, mask, sizeof(packed));
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(packed)));
  return _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

void masked_dual_combo(const double* w, const double* x, const double* m,
                       const std::uint8_t* mask, double rho, double* out, std::size_t n) {
  const __m256d vrho = _mm256_set1_pd(rho);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(m + i));
    const __m256d v = _mm256_add_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(vrho, diff));
    _mm256_storeu_pd(out + i, _mm256_and_pd(v, lane_mask(mask + i)));
  }
  for (; i < n; ++i) {
    const double v = w[i] + rho * (x[i] - m[i]);
    out[i] = mask[i] ? v : 0.0;
  }
}

double dual_ascent(const double* x, const double* m, const std::uint8_t* mask, double rho,
                   double* w, std::size_t n) {
  const __m256d vrho = _mm256_set1_pd(rho);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(m + i));
    const __m256d r = _mm256_and_pd(diff, lane_mask(mask + i));
    _mm256_storeu_pd(w + i, _mm256_add_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(vrho, r)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(r, r));
  }
  double ss = hsum(acc);
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
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(m + i));
    _mm256_storeu_pd(out + i, _mm256_and_pd(diff, lane_mask(mask + i)));
  }
  for (; i < n; ++i) out[i] = mask[i] ? x[i] - m[i] : 0.0;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double ss = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    ss += d * d;
  }
  return ss;
}

double max_abs(const double* a, std::size_t n) {
  const __m256d limit = _mm256_set1_pd(std::numeric_limits<double>::max());
  __m256d mx = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = abs_pd(_mm256_loadu_pd(a + i));
    // NaN compares false under the ordered predicate.
    if (_mm256_movemask_pd(_mm256_cmp_pd(v, limit, _CMP_LE_OQ)) != 0xF)
      return std::numeric_limits<double>::infinity();
    mx = _mm256_max_pd(mx, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, mx);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    const double v = std::fabs(a[i]);
    if (!(v <= std::numeric_limits<double>::max())) return std::numeric_limits<double>::infinity();
    if (v > out) out = v;
  }
  return out;
}

double missing_abs_error(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n, std::size_t* missing) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d keep = lane_mask(mask + i);
    const __m256d err = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(keep, err));
    count += 4 - static_cast<std::size_t>(std::popcount(
                     static_cast<unsigned>(_mm256_movemask_pd(keep))));
  }
  double sum = hsum(acc);
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

const KernelTable& avx2_table() {
  static const KernelTable table{Backend::kAvx2, "avx2",          masked_dual_combo,
                                 dual_ascent,    masked_residual, squared_distance,
                                 max_abs,        missing_abs_error};
  return table;
}

}  // namespace pmu::kernels::detail
