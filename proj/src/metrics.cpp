#include "volfit/metrics.hpp"

#include <cmath>
#include <string>

#include "volfit/errors.hpp"
#include "volfit/kernels.hpp"

namespace volfit {
namespace {

void check_pair(const std::vector<double>& predicted, const std::vector<double>& truth) {
  if (predicted.size() != truth.size())
    throw ValidationError("metrics: vector lengths differ (" +
                          std::to_string(predicted.size()) + " vs " +
                          std::to_string(truth.size()) + ")");
  for (double v : predicted)
    if (!std::isfinite(v)) throw ValidationError("metrics: non-finite predicted value");
  for (double v : truth)
    if (!std::isfinite(v)) throw ValidationError("metrics: non-finite truth value");
}

}  // namespace

double pearson_correlation(const std::vector<double>& predicted,
                           const std::vector<double>& truth) {
  check_pair(predicted, truth);
  const std::size_t n = predicted.size();
  if (n < 2) throw NumericError("pearson_correlation: undefined for fewer than 2 points");

  const auto& ops = kernels::active();
  const double mx = ops.sum(predicted.data(), n) / static_cast<double>(n);
  const double my = ops.sum(truth.data(), n) / static_cast<double>(n);
  std::vector<double> dx(n), dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    dx[i] = predicted[i] - mx;
    dy[i] = truth[i] - my;
  }
  const double sxx = ops.dot(dx.data(), dx.data(), n);
  const double syy = ops.dot(dy.data(), dy.data(), n);
  const double sxy = ops.dot(dx.data(), dy.data(), n);
  if (sxx == 0.0 || syy == 0.0)
    throw NumericError("pearson_correlation: undefined for a constant argument");
  return sxy / std::sqrt(sxx * syy);
}

double exceedance_fraction(const std::vector<double>& predicted,
                           const std::vector<double>& truth, double threshold) {
  check_pair(predicted, truth);
  if (predicted.empty()) throw ValidationError("exceedance_fraction: empty input");
  if (!(threshold > 0.0) || !std::isfinite(threshold))
    throw ValidationError("exceedance_fraction: threshold must be finite and > 0");
  std::size_t count = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] <= 0.0)
      throw ValidationError("exceedance_fraction: truth values must be > 0");
    if (std::fabs(predicted[i] - truth[i]) / truth[i] > threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(truth.size());
}

double mean_abs_rel_error(const std::vector<double>& predicted,
                          const std::vector<double>& truth) {
  check_pair(predicted, truth);
  if (predicted.empty()) throw ValidationError("mean_abs_rel_error: empty input");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] <= 0.0) throw ValidationError("mean_abs_rel_error: truth values must be > 0");
    total += std::fabs(predicted[i] - truth[i]) / truth[i];
  }
  return total / static_cast<double>(truth.size());
}

EvalReport make_report(const std::vector<double>& predicted, const std::vector<double>& truth,
                       double threshold) {
  EvalReport report;
  report.n = truth.size();
  report.threshold = threshold;
  report.pearson_r = pearson_correlation(predicted, truth);
  report.exceed_fraction = exceedance_fraction(predicted, truth, threshold);
  report.mean_abs_rel_error = mean_abs_rel_error(predicted, truth);
  return report;
}

}  // namespace volfit
