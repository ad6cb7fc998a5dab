#pragma once

#include <cstddef>
#include <string_view>

// Dense double-precision inner loops used by the numeric layer.
//
// Every kernel has a scalar reference implementation and an AVX2+FMA variant;
// the variant is chosen once at runtime from CPUID. LVGRAPH_KERNELS=scalar in
// the environment forces the reference path. Variants agree with the
// reference up to FMA rounding (see tests/test_kernels.cpp).

namespace lvgraph::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  /// out_i = x_i * sum_j a[i*n + j] * x_j
  void (*lv_field)(const double* a, const double* x, double* out, std::size_t n);
  /// c = a * b, all n x n row-major; c must not alias a or b.
  void (*gemm)(const double* a, const double* b, double* c, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// max_i |a_i - b_i|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the library was built without the AVX2 translation unit.
const KernelTable* avx2_table() noexcept;

bool supported(Backend backend) noexcept;
Backend active_backend() noexcept;
/// Throws Error(BadParameter) if the CPU lacks the backend.
void set_backend(Backend backend);
std::string_view name(Backend backend) noexcept;

const KernelTable& active() noexcept;

inline void lv_field(const double* a, const double* x, double* out, std::size_t n) {
  active().lv_field(a, x, out, n);
}
inline void gemm(const double* a, const double* b, double* c, std::size_t n) { active().gemm(a, b, c, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) { active().axpy(alpha, x, y, n); }
inline double max_abs_diff(const double* a, const double* b, std::size_t n) {
  return active().max_abs_diff(a, b, n);
}

}  // namespace lvgraph::kernels
