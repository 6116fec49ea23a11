#pragma once

// Line kernels behind the grid calculus.
//
// Each kernel walks `count` contiguous output points. For a lattice axis with
// flat stride s, `f` points at the first stencil center and the kernel reads
// f[i - 2s .. i + 2s]. All variants evaluate the same expression tree in the
// same order, so results are bitwise identical across instruction sets.

#include <cstddef>
#include <string_view>

namespace lbh::kernels {

/// out[i] = ((f[i-2s] - f[i+2s]) + 8 (f[i+s] - f[i-s])) * scale,  scale = 1/(12h)
using Diff1Fn = void (*)(const double* f, double* out, std::size_t count, std::ptrdiff_t stride,
                         double scale);
/// out[i] = ((16 (f[i-s] + f[i+s]) - (f[i-2s] + f[i+2s])) - 30 f[i]) * scale,  scale = 1/(12h^2)
using Diff2Fn = void (*)(const double* f, double* out, std::size_t count, std::ptrdiff_t stride,
                         double scale);
/// acc[i] = acc[i] + a[i] * b[i]  (separate multiply and add, never fused)
using MulAddFn = void (*)(double* acc, const double* a, const double* b, std::size_t count);

struct KernelTable {
  std::string_view name;
  Diff1Fn diff1;
  Diff2Fn diff2;
  MulAddFn mul_add;
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or unsupported by the CPU.
const KernelTable* avx2_table();

/// Table used by the calculus layer. Chosen on first use: AVX2 when available.
const KernelTable& active();

/// Force a table by name ("scalar", "avx2" or "auto"). Returns false if unavailable.
bool select(std::string_view name);

}  // namespace lbh::kernels
