#pragma once

// Elementwise inner loops of the solvers. Each backend (scalar, AVX2, NEON)
// fills one KernelTable; the active table is picked at first use from the
// CPU's capabilities and may be overridden with PMU_KERNELS=scalar|avx2|neon
// or set_backend().
//
// All buffers are flat and the same length n. Masks hold 0/1 bytes.
// Elementwise results are bit-identical across backends; reductions may
// differ in the last few ulps because the summation order differs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pmu::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  const char* name;

  // out = (w + rho * (x - m)) ⊙ mask
  void (*masked_dual_combo)(const double* w, const double* x, const double* m,
                            const std::uint8_t* mask, double rho, double* out, std::size_t n);

  // r = (x - m) ⊙ mask; w += rho * r. Returns sum(r^2).
  double (*dual_ascent)(const double* x, const double* m, const std::uint8_t* mask, double rho,
                        double* w, std::size_t n);

  // out = (x - m) ⊙ mask
  void (*masked_residual)(const double* x, const double* m, const std::uint8_t* mask, double* out,
                          std::size_t n);

  // sum((a - b)^2)
  double (*squared_distance)(const double* a, const double* b, std::size_t n);

  // max |a_i|; +inf if any entry is NaN or infinite.
  double (*max_abs)(const double* a, std::size_t n);

  // sum over mask==0 of |a - b|; count of such positions into *missing.
  double (*missing_abs_error)(const double* a, const double* b, const std::uint8_t* mask,
                              std::size_t n, std::size_t* missing);
};

/// Backends that this build contains and this CPU can execute.
std::vector<Backend> available_backends();
const KernelTable& table_for(Backend backend);

const KernelTable& active();
/// Throws ParameterError if the backend is unavailable.
void set_backend(Backend backend);
Backend parse_backend(std::string_view name);

}  // namespace pmu::kernels
