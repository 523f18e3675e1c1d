#include "volfit/fitting.hpp"

#include <cmath>

#include "volfit/errors.hpp"
#include "volfit/features.hpp"
#include "volfit/kernels.hpp"
#include "volfit/linalg.hpp"

namespace volfit {

const char* solver_mode_name(SolverMode m) {
  switch (m) {
    case SolverMode::kAuto: return "auto";
    case SolverMode::kDirect: return "direct";
    case SolverMode::kMinimumNorm: return "minimum-norm";
  }
  return "unknown";
}

namespace {

void validate_config(const FitConfig& config) {
  if (!std::isfinite(config.ridge) || config.ridge < 0.0)
    throw ValidationError("fit: ridge must be finite and >= 0");
  if (!(config.rank_tolerance > 0.0) || !(config.rank_tolerance < 1.0))
    throw ValidationError("fit: rank_tolerance must be in (0, 1)");
}

}  // namespace

NormalSystem assemble_normal_system(const Cohort& cohort) {
  if (!cohort.has_volumes())
    throw ValidationError("assemble_normal_system: cohort has no volumes");
  if (cohort.n() == 0) throw ValidationError("assemble_normal_system: empty cohort");

  const std::size_t m = cohort.panel().size();
  const std::size_t d = FeatureVector::dimension(m);
  NormalSystem sys;
  sys.d = d;
  sys.n = cohort.n();
  sys.gram.assign(d * d, 0.0);
  sys.rhs.assign(d, 0.0);

  const auto& ops = kernels::active();
  std::vector<double> phi;
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    feature_map_into(cohort.sample(s), cohort.panel(), phi);
    const double lambda = cohort.volume(s);
    // Upper triangle of the rank-1 update phi phi^T, then rhs.
    for (std::size_t i = 0; i < d; ++i)
      ops.axpy(phi[i], phi.data() + i, sys.gram.data() + i * d + i, d - i);
    ops.axpy(lambda, phi.data(), sys.rhs.data(), d);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) sys.gram[i * d + j] = sys.gram[j * d + i];
  return sys;
}

VolumeModel fit(const Cohort& cohort, const FitConfig& config) {
  validate_config(config);
  NormalSystem sys = assemble_normal_system(cohort);
  const std::size_t d = sys.d;
  const std::size_t m = cohort.panel().size();

  std::vector<double> a = sys.gram;
  if (config.ridge > 0.0)
    for (std::size_t i = 0; i < d; ++i) a[i * d + i] += config.ridge;

  FitMeta meta;
  meta.ridge = config.ridge;
  meta.rank_tolerance = config.rank_tolerance;
  meta.solver_mode = solver_mode_name(config.solver_mode);
  meta.train_n = sys.n;

  std::vector<double> alpha;
  switch (config.solver_mode) {
    case SolverMode::kDirect: {
      auto x = linalg::cholesky_solve(a, d, sys.rhs, config.rank_tolerance);
      if (!x)
        throw NumericError(
            "fit: system is not safely positive definite; use solver_mode auto or "
            "minimum-norm, or add ridge");
      alpha = std::move(*x);
      meta.solver_path = "cholesky";
      break;
    }
    case SolverMode::kMinimumNorm: {
      alpha = linalg::minnorm_solve(a, d, sys.rhs, config.rank_tolerance);
      meta.solver_path = "spectral";
      break;
    }
    case SolverMode::kAuto: {
      if (auto x = linalg::cholesky_solve(a, d, sys.rhs, config.rank_tolerance)) {
        alpha = std::move(*x);
        meta.solver_path = "cholesky";
      } else {
        alpha = linalg::minnorm_solve(a, d, sys.rhs, config.rank_tolerance);
        meta.solver_path = "spectral";
      }
      break;
    }
  }

  for (double c : alpha) {
    if (!std::isfinite(c)) throw NumericError("fit: solver produced non-finite coefficients");
  }
  std::vector<double> lin(alpha.begin(), alpha.begin() + m);
  std::vector<double> quad(alpha.begin() + m, alpha.end());
  return VolumeModel(cohort.panel(), std::move(lin), std::move(quad), std::move(meta));
}

double objective_value(const VolumeModel& model, const Cohort& cohort) {
  if (!cohort.has_volumes()) throw ValidationError("objective_value: cohort has no volumes");
  const std::vector<double> pred = predict_all(model, cohort);
  double h = 0.0;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    const double r = pred[s] - cohort.volume(s);
    h += r * r;
  }
  return h;
}

}  // namespace volfit
