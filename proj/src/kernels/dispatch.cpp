#include "volfit/kernels.hpp"

#include <stdexcept>

namespace volfit::kernels {

#if defined(VOLFIT_BUILD_AVX2)
const Ops* avx2_ops_impl();
#endif

bool cpu_supports_avx2() {
#if defined(VOLFIT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* avx2_ops() {
#if defined(VOLFIT_BUILD_AVX2)
  if (cpu_supports_avx2()) return avx2_ops_impl();
#endif
  return nullptr;
}

namespace {

struct Active {
  const Ops* ops;
  Backend backend;
};

Active& active_state() {
  static Active state = [] {
    if (const Ops* simd = avx2_ops()) return Active{simd, Backend::avx2};
    return Active{&scalar_ops(), Backend::scalar};
  }();
  return state;
}

}  // namespace

const Ops& active() { return *active_state().ops; }

Backend active_backend() { return active_state().backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

void select_backend(Backend b) {
  if (b == Backend::scalar) {
    active_state() = {&scalar_ops(), Backend::scalar};
    return;
  }
  const Ops* simd = avx2_ops();
  if (!simd) throw std::runtime_error("kernels: avx2 backend not available on this CPU/build");
  active_state() = {simd, Backend::avx2};
}

void select_best_backend() {
  if (const Ops* simd = avx2_ops())
    active_state() = {simd, Backend::avx2};
  else
    active_state() = {&scalar_ops(), Backend::scalar};
}

}  // namespace volfit::kernels
