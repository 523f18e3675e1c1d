#pragma once

#include <cstddef>
#include <vector>

#include "volfit/panel.hpp"

namespace volfit {

// Degree-1 positively homogeneous polynomial basis evaluated at a sample y:
// first the m linear terms y_i in panel order, then the m(m+1)/2 quadratic
// terms y_i*y_j/rho for i <= j in lexicographic (i,j) order, where
// rho = ||y||_2. Every basis term satisfies phi(k*y) = k*phi(y) for k > 0.
// At y = 0 the quadratic terms are taken as 0, the limit along rays.
struct FeatureVector {
  std::vector<double> entries;

  static std::size_t dimension(std::size_t m) { return m + m * (m + 1) / 2; }

  // Packed index of the quadratic term (i, j), i <= j, within the quadratic
  // block: pairs ordered (0,0), (0,1), ..., (0,m-1), (1,1), ...
  static std::size_t quad_index(std::size_t i, std::size_t j, std::size_t m) {
    return i * m - i * (i - 1) / 2 + (j - i);
  }

  std::size_t size() const { return entries.size(); }
  double operator[](std::size_t k) const { return entries[k]; }
};

FeatureVector feature_map(const Sample& sample, const AnalytePanel& panel);

// In-place variant used by the fitting hot loop; `out` is resized to d.
void feature_map_into(const Sample& sample, const AnalytePanel& panel, std::vector<double>& out);

}  // namespace volfit
