#pragma once

// Counting kernels behind the estimator's inner loops. Every instruction-set
// variant evaluates the same arithmetic in the same order without fused
// multiply-add, so all variants return identical counts.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace bivex::kernels {

// Membership in {alpha1 f1 + alpha2 f2 > retention}, where fj = offsetj +
// slopej * wj is the forward image of a linearized standardized coordinate.
// A coordinate with wj == +inf is always inside.
struct HalfplaneCoeffs {
  double alpha1;
  double offset1;
  double slope1;
  double alpha2;
  double offset2;
  double slope2;
  double retention;
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  std::size_t (*count_halfplane)(std::span<const double> w1, std::span<const double> w2,
                                 const HalfplaneCoeffs& coeffs);
  // #{i : z1[i] > a and z2[i] > b}
  std::size_t (*count_rectangle)(std::span<const double> z1, std::span<const double> z2,
                                 double a, double b);
};

// Variants compiled into this build and supported by the running CPU, scalar
// first.
std::vector<Isa> available_isas();

// Throws std::invalid_argument when the variant is not available.
const KernelTable& table_for(Isa isa);

// Best available variant, chosen once. BIVEX_ISA=scalar|avx2|neon in the
// environment forces a specific one.
const KernelTable& active();

// Scalar membership test shared by the reference kernel and the SIMD tails.
inline bool halfplane_member(double w1, double w2, const HalfplaneCoeffs& c) noexcept {
  constexpr double inf = __builtin_inf();
  const double f1 = c.offset1 + c.slope1 * w1;
  const double f2 = c.offset2 + c.slope2 * w2;
  const double v = c.alpha1 * f1 + c.alpha2 * f2;
  return (v > c.retention) | (w1 == inf) | (w2 == inf);
}

}  // namespace bivex::kernels
