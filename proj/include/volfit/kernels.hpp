#pragma once

#include <cstddef>
#include <string>

// Double-precision vector kernels behind the numeric hot loops (feature
// maps, Gram accumulation, dot products, reductions). A scalar reference
// implementation always exists; an AVX2+FMA variant is selected at runtime
// when the CPU supports it. SIMD variants reassociate additions, so results
// may differ from the scalar reference by a few ulp; within one process the
// selected backend is fixed, which keeps repeated runs bit-identical.

namespace volfit::kernels {

enum class Backend { scalar, avx2 };

struct Ops {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = alpha * x[i]  (exact per element, backend-independent)
  void (*scale)(double alpha, const double* x, double* out, std::size_t n);
};

const Ops& scalar_ops();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const Ops* avx2_ops();

bool cpu_supports_avx2();

// Active table used by the library. Defaults to the best supported backend.
const Ops& active();
Backend active_backend();
const char* backend_name(Backend b);

// Force a specific backend (used by equivalence tests). Selecting
// Backend::avx2 on a CPU without AVX2 throws. Not thread-safe; call before
// spawning compute threads.
void select_backend(Backend b);
void select_best_backend();

}  // namespace volfit::kernels
