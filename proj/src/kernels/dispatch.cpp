#include <atomic>
#include <cstdlib>
#include <string>

#include "lvgraph/error.hpp"
#include "lvgraph/kernels.hpp"

#ifndef LVGRAPH_HAVE_AVX2
namespace lvgraph::kernels {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace lvgraph::kernels
#endif

namespace lvgraph::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  const char* env = std::getenv("LVGRAPH_KERNELS");
  if (env != nullptr && std::string(env) == "scalar") return Backend::Scalar;
  return supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

bool supported(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!supported(backend))
    throw Error(ErrorKind::BadParameter, std::string("kernel backend ") + std::string(name(backend)) +
                                             " is not available on this CPU");
  current().store(backend, std::memory_order_relaxed);
}

std::string_view name(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

const KernelTable& active() noexcept {
  return active_backend() == Backend::Avx2 ? *avx2_table() : scalar_table();
}

}  // namespace lvgraph::kernels
