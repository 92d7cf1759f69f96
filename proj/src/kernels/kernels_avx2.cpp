// Compiled with -mavx2 (no -mfma); only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "tables.hpp"

namespace bivex::kernels::detail {

namespace {

std::size_t count_halfplane_avx2(std::span<const double> w1, std::span<const double> w2,
                                 const HalfplaneCoeffs& c) {
  const std::size_t n = w1.size();
  const double* p1 = w1.data();
  const double* p2 = w2.data();

  const __m256d alpha1 = _mm256_set1_pd(c.alpha1);
  const __m256d offset1 = _mm256_set1_pd(c.offset1);
  const __m256d slope1 = _mm256_set1_pd(c.slope1);
  const __m256d alpha2 = _mm256_set1_pd(c.alpha2);
  const __m256d offset2 = _mm256_set1_pd(c.offset2);
  const __m256d slope2 = _mm256_set1_pd(c.slope2);
  const __m256d retention = _mm256_set1_pd(c.retention);
  const __m256d inf = _mm256_set1_pd(__builtin_inf());

  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x1 = _mm256_loadu_pd(p1 + i);
    const __m256d x2 = _mm256_loadu_pd(p2 + i);
    const __m256d f1 = _mm256_add_pd(offset1, _mm256_mul_pd(slope1, x1));
    const __m256d f2 = _mm256_add_pd(offset2, _mm256_mul_pd(slope2, x2));
    const __m256d v = _mm256_add_pd(_mm256_mul_pd(alpha1, f1), _mm256_mul_pd(alpha2, f2));
    __m256d inside = _mm256_cmp_pd(v, retention, _CMP_GT_OQ);
    inside = _mm256_or_pd(inside, _mm256_cmp_pd(x1, inf, _CMP_EQ_OQ));
    inside = _mm256_or_pd(inside, _mm256_cmp_pd(x2, inf, _CMP_EQ_OQ));
    count += static_cast<std::size_t>(
        std::popcount(static_cast<unsigned>(_mm256_movemask_pd(inside))));
  }
  for (; i < n; ++i) {
    count += halfplane_member(p1[i], p2[i], c) ? 1 : 0;
  }
  return count;
}

std::size_t count_rectangle_avx2(std::span<const double> z1, std::span<const double> z2,
                                 double a, double b) {
  const std::size_t n = z1.size();
  const double* p1 = z1.data();
  const double* p2 = z2.data();
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);

  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d gt1 = _mm256_cmp_pd(_mm256_loadu_pd(p1 + i), va, _CMP_GT_OQ);
    const __m256d gt2 = _mm256_cmp_pd(_mm256_loadu_pd(p2 + i), vb, _CMP_GT_OQ);
    count += static_cast<std::size_t>(
        std::popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_and_pd(gt1, gt2)))));
  }
  for (; i < n; ++i) {
    count += (p1[i] > a && p2[i] > b) ? 1 : 0;
  }
  return count;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{Isa::Avx2, &count_halfplane_avx2, &count_rectangle_avx2};
  return table;
}

}  // namespace bivex::kernels::detail
