#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "volfit/features.hpp"
#include "volfit/panel.hpp"

namespace volfit {

// How the fitted coefficients were obtained; persisted with the model.
struct FitMeta {
  double ridge = 0.0;
  double rank_tolerance = 1e-10;
  std::string solver_mode = "auto";    // requested: auto | direct | minimum-norm
  std::string solver_path = "none";    // applied: cholesky | spectral
  std::uint64_t train_n = 0;

  bool operator==(const FitMeta&) const = default;
};

// Fitted volume estimator f(y) = sum_i a_i y_i + sum_{i<=j} a_ij y_i y_j / rho.
// Positively homogeneous of degree 1 by construction: predict(k*y) = k*predict(y)
// for every k > 0, and predict(0) = 0.
class VolumeModel {
 public:
  VolumeModel(AnalytePanel panel, std::vector<double> alpha_linear,
              std::vector<double> alpha_quadratic, FitMeta meta = {});

  const AnalytePanel& panel() const { return panel_; }
  std::size_t m() const { return panel_.size(); }
  std::size_t dimension() const { return coef_.size(); }

  std::span<const double> alpha_linear() const {
    return {coef_.data(), panel_.size()};
  }
  std::span<const double> alpha_quadratic() const {
    return {coef_.data() + panel_.size(), coef_.size() - panel_.size()};
  }
  // Concatenated (linear, quadratic) coefficients, matching FeatureVector layout.
  const std::vector<double>& coefficients() const { return coef_; }

  const FitMeta& meta() const { return meta_; }

 private:
  AnalytePanel panel_;
  std::vector<double> coef_;
  FitMeta meta_;
};

// dot(alpha, phi(y)). Never clamps: a badly fit model may return a negative
// volume and reporting that honestly is the caller's job.
double predict(const VolumeModel& model, const Sample& sample);

// Predictions for every row of a cohort (panel must match the model's).
std::vector<double> predict_all(const VolumeModel& model, const Cohort& cohort);

}  // namespace volfit
