#include "lbh/kernels.hpp"

namespace lbh::kernels {
namespace {

void diff1_scalar(const double* f, double* out, std::size_t count, std::ptrdiff_t s,
                  double scale) {
  for (std::size_t i = 0; i < count; ++i) {
    const double* p = f + i;
    out[i] = ((p[-2 * s] - p[2 * s]) + 8.0 * (p[s] - p[-s])) * scale;
  }
}

void diff2_scalar(const double* f, double* out, std::size_t count, std::ptrdiff_t s,
                  double scale) {
  for (std::size_t i = 0; i < count; ++i) {
    const double* p = f + i;
    out[i] = ((16.0 * (p[-s] + p[s]) - (p[-2 * s] + p[2 * s])) - 30.0 * p[0]) * scale;
  }
}

void mul_add_scalar(double* acc, const double* a, const double* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) acc[i] = acc[i] + a[i] * b[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", diff1_scalar, diff2_scalar, mul_add_scalar};
  return table;
}

}  // namespace lbh::kernels
