#include <immintrin.h>

#include "lbh/kernels.hpp"

namespace lbh::kernels {
namespace {

void diff1_avx2(const double* f, double* out, std::size_t count, std::ptrdiff_t s,
                double scale) {
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const double* p = f + i;
    const __m256d m2 = _mm256_loadu_pd(p - 2 * s);
    const __m256d m1 = _mm256_loadu_pd(p - s);
    const __m256d p1 = _mm256_loadu_pd(p + s);
    const __m256d p2 = _mm256_loadu_pd(p + 2 * s);
    const __m256d outer = _mm256_sub_pd(m2, p2);
    const __m256d inner = _mm256_mul_pd(eight, _mm256_sub_pd(p1, m1));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_add_pd(outer, inner), vscale));
  }
  for (; i < count; ++i) {
    const double* p = f + i;
    out[i] = ((p[-2 * s] - p[2 * s]) + 8.0 * (p[s] - p[-s])) * scale;
  }
}

void diff2_avx2(const double* f, double* out, std::size_t count, std::ptrdiff_t s,
                double scale) {
  const __m256d sixteen = _mm256_set1_pd(16.0);
  const __m256d thirty = _mm256_set1_pd(30.0);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const double* p = f + i;
    const __m256d m2 = _mm256_loadu_pd(p - 2 * s);
    const __m256d m1 = _mm256_loadu_pd(p - s);
    const __m256d c0 = _mm256_loadu_pd(p);
    const __m256d p1 = _mm256_loadu_pd(p + s);
    const __m256d p2 = _mm256_loadu_pd(p + 2 * s);
    const __m256d near = _mm256_mul_pd(sixteen, _mm256_add_pd(m1, p1));
    const __m256d far = _mm256_add_pd(m2, p2);
    const __m256d sum = _mm256_sub_pd(_mm256_sub_pd(near, far), _mm256_mul_pd(thirty, c0));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(sum, vscale));
  }
  for (; i < count; ++i) {
    const double* p = f + i;
    out[i] = ((16.0 * (p[-s] + p[s]) - (p[-2 * s] + p[2 * s])) - 30.0 * p[0]) * scale;
  }
}

void mul_add_avx2(double* acc, const double* a, const double* b, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), prod));
  }
  for (; i < count; ++i) acc[i] = acc[i] + a[i] * b[i];
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", diff1_avx2, diff2_avx2, mul_add_avx2};
  return table;
}

}  // namespace lbh::kernels
