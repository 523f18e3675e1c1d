#pragma once

#include <cstddef>
#include <vector>

namespace volfit {

// Quality measures of reconstructed volumes against true volumes.
struct EvalReport {
  double pearson_r = 0.0;
  double exceed_fraction = 0.0;  // share of samples with relative error > threshold
  double threshold = 0.05;
  std::size_t n = 0;
  double mean_abs_rel_error = 0.0;

  bool operator==(const EvalReport&) const = default;
};

// Sample Pearson correlation. Requires n >= 2, finite entries, and nonzero
// variance in both arguments (throws NumericError otherwise).
double pearson_correlation(const std::vector<double>& predicted,
                           const std::vector<double>& truth);

// (1/n) * #{s : |pred_s - truth_s| / truth_s > threshold}. Strict inequality:
// a relative error exactly at the threshold does not count. Truth entries
// must be > 0 and threshold > 0.
double exceedance_fraction(const std::vector<double>& predicted,
                           const std::vector<double>& truth, double threshold);

double mean_abs_rel_error(const std::vector<double>& predicted,
                          const std::vector<double>& truth);

EvalReport make_report(const std::vector<double>& predicted, const std::vector<double>& truth,
                       double threshold = 0.05);

}  // namespace volfit
