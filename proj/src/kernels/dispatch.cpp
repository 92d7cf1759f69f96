#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tables.hpp"

namespace bivex::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(BIVEX_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(BIVEX_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_active() {
  if (const char* forced = std::getenv("BIVEX_ISA"); forced != nullptr && *forced != '\0') {
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (to_string(isa) == forced) {
        return table_for(isa);
      }
    }
    throw std::invalid_argument(std::string("unknown BIVEX_ISA value: ") + forced);
  }
  const auto isas = available_isas();
  return table_for(isas.back());
}

}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) {
      out.push_back(isa);
    }
  }
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument(std::string("kernel variant not available: ") +
                                std::string(to_string(isa)));
  }
  switch (isa) {
#if defined(BIVEX_HAVE_AVX2)
    case Isa::Avx2: return detail::avx2_table();
#endif
#if defined(BIVEX_HAVE_NEON)
    case Isa::Neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

const KernelTable& active() {
  static const KernelTable& table = select_active();
  return table;
}

}  // namespace bivex::kernels
