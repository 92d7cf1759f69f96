// AArch64 only; NEON is part of the base ISA there, so no runtime check.

#include <arm_neon.h>

#include "tables.hpp"

namespace bivex::kernels::detail {

namespace {

std::size_t count_halfplane_neon(std::span<const double> w1, std::span<const double> w2,
                                 const HalfplaneCoeffs& c) {
  const std::size_t n = w1.size();
  const double* p1 = w1.data();
  const double* p2 = w2.data();

  const float64x2_t alpha1 = vdupq_n_f64(c.alpha1);
  const float64x2_t offset1 = vdupq_n_f64(c.offset1);
  const float64x2_t slope1 = vdupq_n_f64(c.slope1);
  const float64x2_t alpha2 = vdupq_n_f64(c.alpha2);
  const float64x2_t offset2 = vdupq_n_f64(c.offset2);
  const float64x2_t slope2 = vdupq_n_f64(c.slope2);
  const float64x2_t retention = vdupq_n_f64(c.retention);
  const float64x2_t inf = vdupq_n_f64(__builtin_inf());

  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x1 = vld1q_f64(p1 + i);
    const float64x2_t x2 = vld1q_f64(p2 + i);
    // Separate mul/add; vfmaq would round differently from the scalar path.
    const float64x2_t f1 = vaddq_f64(offset1, vmulq_f64(slope1, x1));
    const float64x2_t f2 = vaddq_f64(offset2, vmulq_f64(slope2, x2));
    const float64x2_t v = vaddq_f64(vmulq_f64(alpha1, f1), vmulq_f64(alpha2, f2));
    uint64x2_t inside = vcgtq_f64(v, retention);
    inside = vorrq_u64(inside, vceqq_f64(x1, inf));
    inside = vorrq_u64(inside, vceqq_f64(x2, inf));
    count += static_cast<std::size_t>(vgetq_lane_u64(inside, 0) & 1u) +
             static_cast<std::size_t>(vgetq_lane_u64(inside, 1) & 1u);
  }
  for (; i < n; ++i) {
    count += halfplane_member(p1[i], p2[i], c) ? 1 : 0;
  }
  return count;
}

std::size_t count_rectangle_neon(std::span<const double> z1, std::span<const double> z2,
                                 double a, double b) {
  const std::size_t n = z1.size();
  const double* p1 = z1.data();
  const double* p2 = z2.data();
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);

  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t both =
        vandq_u64(vcgtq_f64(vld1q_f64(p1 + i), va), vcgtq_f64(vld1q_f64(p2 + i), vb));
    count += static_cast<std::size_t>(vgetq_lane_u64(both, 0) & 1u) +
             static_cast<std::size_t>(vgetq_lane_u64(both, 1) & 1u);
  }
  for (; i < n; ++i) {
    count += (p1[i] > a && p2[i] > b) ? 1 : 0;
  }
  return count;
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static const KernelTable table{Isa::Neon, &count_halfplane_neon, &count_rectangle_neon};
  return table;
}

}  // namespace bivex::kernels::detail
