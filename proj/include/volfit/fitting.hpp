#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "volfit/model.hpp"
#include "volfit/panel.hpp"

namespace volfit {

// Normal equations of the least-squares objective
//   h(alpha) = sum_s (dot(alpha, phi(x_s)) - lambda_s)^2:
// gram = sum_s phi(x_s) phi(x_s)^T, rhs = sum_s lambda_s phi(x_s).
// The stationarity condition grad h = 0 is exactly gram * alpha = rhs.
struct NormalSystem {
  std::vector<double> gram;  // row-major d x d, symmetric PSD
  std::vector<double> rhs;   // d
  std::size_t d = 0;
  std::size_t n = 0;
};

enum class SolverMode { kAuto, kDirect, kMinimumNorm };

const char* solver_mode_name(SolverMode m);

struct FitConfig {
  double ridge = 0.0;            // >= 0; adds ridge * ||alpha||^2 to the objective
  double rank_tolerance = 1e-10; // relative eigenvalue cutoff, in (0, 1)
  SolverMode solver_mode = SolverMode::kAuto;
};

// Accumulates gram and rhs in row order (fixed, so results are reproducible
// for a given cohort ordering). Requires volumes and n >= 1.
NormalSystem assemble_normal_system(const Cohort& cohort);

// Minimizes h + ridge*||alpha||^2. With a rank-deficient system and ridge 0,
// returns the minimum-norm minimizer. Mode auto attempts a guarded Cholesky
// solve of gram + ridge*I and falls back to the truncated spectral path;
// direct errors instead of falling back; minimum-norm always takes the
// spectral path. The model's FitMeta records which path ran.
VolumeModel fit(const Cohort& cohort, const FitConfig& config = {});

// h(model) = sum_s (predict - lambda_s)^2, accumulated in row order.
double objective_value(const VolumeModel& model, const Cohort& cohort);

}  // namespace volfit
