#include "volfit/cross_validation.hpp"

#include <numeric>

#include "volfit/errors.hpp"
#include "volfit/rng.hpp"

namespace volfit {

std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ValidationError("cross_validate: folds must be >= 2");
  if (n < folds) throw ValidationError("cross_validate: fewer samples than folds");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng::Stream stream(seed);
  rng::shuffle(order, stream);

  std::vector<std::size_t> assignment(n);
  const std::size_t base = n / folds;
  const std::size_t extra = n % folds;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) assignment[order[pos++]] = f;
  }
  return assignment;
}

std::vector<double> cross_validate_predictions(const Cohort& cohort, const FitConfig& config,
                                               std::size_t folds, std::uint64_t seed) {
  if (!cohort.has_volumes()) throw ValidationError("cross_validate: cohort has no volumes");
  const std::size_t n = cohort.n();
  const std::vector<std::size_t> assignment = fold_assignment(n, folds, seed);

  std::vector<double> predictions(n, 0.0);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<Sample> train_rows;
    std::vector<double> train_vols;
    std::vector<std::size_t> held_out;
    for (std::size_t s = 0; s < n; ++s) {
      if (assignment[s] == f) {
        held_out.push_back(s);
      } else {
        train_rows.push_back(cohort.sample(s));
        train_vols.push_back(cohort.volume(s));
      }
    }
    Cohort train(cohort.panel(), std::move(train_rows), std::move(train_vols));
    VolumeModel model = fit(train, config);
    for (std::size_t s : held_out) predictions[s] = predict(model, cohort.sample(s));
  }
  return predictions;
}

EvalReport cross_validate(const Cohort& cohort, const FitConfig& config, std::size_t folds,
                          std::uint64_t seed, double threshold) {
  const std::vector<double> predictions =
      cross_validate_predictions(cohort, config, folds, seed);
  return make_report(predictions, cohort.volumes(), threshold);
}

}  // namespace volfit
