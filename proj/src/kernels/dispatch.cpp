#include <cstdlib>
#include <string_view>

#include "magnitude/kernels/kernels.hpp"

namespace mag::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {
const KernelTable& select() {
  const char* forced = std::getenv("MAGNITUDE_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar::table();
  if (avx2::table() != nullptr && cpu_has_avx2()) return *avx2::table();
  return scalar::table();
}
}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace mag::kernels
