#pragma once

// Data-parallel inner loops shared by the renderer and the network layers.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant. The variant is picked once at first use from CPUID; setting the
// environment variable LEVELSET_SIMD=scalar forces the reference path.
// Results of the two paths agree to rounding but are not bitwise equal, so a
// single process always uses one table.

#include <cstddef>
#include <span>
#include <string_view>

namespace levelset::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y[i] = max(x[i], 0)
  void (*relu)(const double* x, double* y, std::size_t n);
  /// y[i] = x[i] > 0 ? g[i] : 0
  void (*relu_backward)(const double* x, const double* g, double* y, std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

bool isa_supported(Isa isa);
/// Kernel table in use for this process.
const KernelTable& active();
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace levelset::simd
