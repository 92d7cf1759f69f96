#include "tables.hpp"

namespace bivex::kernels::detail {

namespace {

std::size_t count_halfplane_scalar(std::span<const double> w1, std::span<const double> w2,
                                   const HalfplaneCoeffs& coeffs) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < w1.size(); ++i) {
    count += halfplane_member(w1[i], w2[i], coeffs) ? 1 : 0;
  }
  return count;
}

std::size_t count_rectangle_scalar(std::span<const double> z1, std::span<const double> z2,
                                   double a, double b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    count += (z1[i] > a && z2[i] > b) ? 1 : 0;
  }
  return count;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{Isa::Scalar, &count_halfplane_scalar, &count_rectangle_scalar};
  return table;
}

}  // namespace bivex::kernels::detail
