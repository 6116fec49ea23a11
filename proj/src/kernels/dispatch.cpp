#include <atomic>

#include "lbh/kernels.hpp"

namespace lbh::kernels {

#if defined(LBH_WITH_AVX2)
const KernelTable& avx2_table_impl();
#endif

namespace {

const KernelTable* detect() {
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(LBH_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  if (supported) return &avx2_table_impl();
#endif
  return nullptr;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = nullptr;
  if (name == "auto")
    t = detect();
  else if (name == "scalar")
    t = &scalar_table();
  else if (name == "avx2")
    t = avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace lbh::kernels
