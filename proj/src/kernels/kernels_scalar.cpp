#include "volfit/kernels.hpp"

// Reference kernels. Plain sequential loops, one accumulator: this is the
// semantics the SIMD variants are equivalence-tested against.

namespace volfit::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{dot_scalar, sum_scalar, axpy_scalar, scale_scalar};
  return ops;
}

}  // namespace volfit::kernels
