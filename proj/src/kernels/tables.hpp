#pragma once

#include "bivex/kernels.hpp"

namespace bivex::kernels::detail {

const KernelTable& scalar_table() noexcept;
#if defined(BIVEX_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(BIVEX_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace bivex::kernels::detail
