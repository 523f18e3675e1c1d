#include "volfit/features.hpp"

#include <cmath>

#include "volfit/errors.hpp"
#include "volfit/kernels.hpp"

namespace volfit {

void feature_map_into(const Sample& sample, const AnalytePanel& panel,
                      std::vector<double>& out) {
  const std::size_t m = panel.size();
  if (sample.size() != m)
    throw ValidationError("feature_map: sample length does not match panel");
  const double* y = sample.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(y[i])) throw ValidationError("feature_map: non-finite analyte value");
  }

  const auto& ops = kernels::active();
  out.resize(FeatureVector::dimension(m));
  double* lin = out.data();
  double* quad = out.data() + m;

  for (std::size_t i = 0; i < m; ++i) lin[i] = y[i];

  const double rho = std::sqrt(ops.dot(y, y, m));
  if (rho == 0.0) {
    // Zero sample: all quadratic terms vanish, consistent with the limit
    // along rays y -> 0.
    for (std::size_t k = m; k < out.size(); ++k) out[k] = 0.0;
    return;
  }
  std::size_t offset = 0;
  for (std::size_t i = 0; i < m; ++i) {
    // Row i of the packed upper triangle: (y_i/rho) * y_j for j = i..m-1.
    ops.scale(y[i] / rho, y + i, quad + offset, m - i);
    offset += m - i;
  }
}

FeatureVector feature_map(const Sample& sample, const AnalytePanel& panel) {
  FeatureVector phi;
  feature_map_into(sample, panel, phi.entries);
  return phi;
}

}  // namespace volfit
