#include <atomic>
#include <cstdlib>
#include <string>

#include "backends.hpp"
#include "pmu/error.hpp"

namespace pmu::kernels {
namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(PMU_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(PMU_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* best_table() {
  if (const char* forced = std::getenv("PMU_KERNELS"); forced && *forced) {
    const Backend b = parse_backend(forced);
    if (cpu_supports(b)) return &table_for(b);
  }
  const auto backends = available_backends();
  return &table_for(backends.back());
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{best_table()};
  return current;
}

}  // namespace

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::kScalar};
  for (Backend b : {Backend::kNeon, Backend::kAvx2})
    if (cpu_supports(b)) out.push_back(b);
  return out;
}

const KernelTable& table_for(Backend backend) {
  if (!cpu_supports(backend))
    throw ParameterError("kernel backend not available on this build or CPU");
  switch (backend) {
#if defined(PMU_HAVE_AVX2)
    case Backend::kAvx2:
      return detail::avx2_table();
#endif
#if defined(PMU_HAVE_NEON)
    case Backend::kNeon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_backend(Backend backend) { slot().store(&table_for(backend), std::memory_order_release); }

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "neon") return Backend::kNeon;
  throw ParameterError("unknown kernel backend '" + std::string(name) + "'");
}

}  // namespace pmu::kernels
