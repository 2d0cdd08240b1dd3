#pragma once

#include "pmu/kernels.hpp"

namespace pmu::kernels::detail {

const KernelTable& scalar_table();
#if defined(PMU_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(PMU_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace pmu::kernels::detail
