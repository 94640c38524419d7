#include <cstdlib>
#include <string>

#include "levelset/simd/kernels.hpp"

namespace levelset::simd {

#ifndef LEVELSET_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(LEVELSET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* env = std::getenv("LEVELSET_SIMD");
    const bool force_scalar = env != nullptr && std::string(env) == "scalar";
    if (!force_scalar && isa_supported(Isa::avx2)) return *avx2_kernels();
    return scalar_kernels();
  }();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace levelset::simd
