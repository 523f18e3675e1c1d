#include "volfit/model.hpp"

#include <cmath>
#include <utility>

#include "volfit/errors.hpp"
#include "volfit/kernels.hpp"

namespace volfit {

VolumeModel::VolumeModel(AnalytePanel panel, std::vector<double> alpha_linear,
                         std::vector<double> alpha_quadratic, FitMeta meta)
    : panel_(std::move(panel)), meta_(std::move(meta)) {
  const std::size_t m = panel_.size();
  if (alpha_linear.size() != m)
    throw ValidationError("model: linear coefficient count does not match panel");
  if (alpha_quadratic.size() != m * (m + 1) / 2)
    throw ValidationError("model: quadratic coefficient count does not match panel");
  coef_ = std::move(alpha_linear);
  coef_.insert(coef_.end(), alpha_quadratic.begin(), alpha_quadratic.end());
  for (double c : coef_) {
    if (!std::isfinite(c)) throw ValidationError("model: non-finite coefficient");
  }
}

double predict(const VolumeModel& model, const Sample& sample) {
  if (sample.size() != model.m())
    throw ValidationError("predict: sample length does not match model panel");
  thread_local std::vector<double> phi;
  feature_map_into(sample, model.panel(), phi);
  return kernels::active().dot(model.coefficients().data(), phi.data(), phi.size());
}

std::vector<double> predict_all(const VolumeModel& model, const Cohort& cohort) {
  if (!cohort.panel().same_codes(model.panel()))
    throw ValidationError("predict: cohort panel does not match model panel");
  std::vector<double> out;
  out.reserve(cohort.n());
  std::vector<double> phi;
  const auto& ops = kernels::active();
  for (const Sample& s : cohort.samples()) {
    feature_map_into(s, model.panel(), phi);
    out.push_back(ops.dot(model.coefficients().data(), phi.data(), phi.size()));
  }
  return out;
}

}  // namespace volfit
