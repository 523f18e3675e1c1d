#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "volfit/cross_validation.hpp"
#include "volfit/errors.hpp"
#include "volfit/rng.hpp"
#include "volfit/synth.hpp"

using volfit::Cohort;
using volfit::EvalReport;
using volfit::FitConfig;
using volfit::ValidationError;

namespace {

// Noiseless planted cohort: volumes derived from the samples by an exact
// in-class model, so held-out prediction error is purely numerical.
Cohort planted(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::vector<std::string> codes;
  for (std::size_t i = 0; i < m; ++i) codes.push_back("A" + std::to_string(i));
  volfit::synth::SynthConfig config{volfit::AnalytePanel(codes)};
  config.concentration_log_mean.assign(m, 0.0);
  config.concentration_log_sd.assign(m, 0.5);
  config.n = n;
  config.seed = seed;
  Cohort raw = volfit::synth::generate_cohort(config);

  volfit::rng::Stream rng(seed + 1);
  const std::size_t d = m + m * (m + 1) / 2;
  std::vector<double> alpha(d);
  for (auto& a : alpha) a = rng.uniform(0.2, 1.0);
  std::vector<double> volumes(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::vector<double> phi = oracle::feature_row(raw.sample(s).values());
    double lambda = 0.0;
    for (std::size_t k = 0; k < d; ++k) lambda += alpha[k] * phi[k];
    volumes[s] = lambda;
  }
  return Cohort(raw.panel(), raw.samples(), std::move(volumes));
}

}  // namespace

TEST_CASE("fold assignment: partition with balanced contiguous-block sizes") {
  for (std::size_t n : {10u, 11u, 13u, 100u}) {
    for (std::size_t folds : {2u, 3u, 5u}) {
      std::vector<std::size_t> assign = volfit::fold_assignment(n, folds, 42);
      REQUIRE(assign.size() == n);
      std::vector<std::size_t> counts(folds, 0);
      for (std::size_t f : assign) {
        REQUIRE(f < folds);
        ++counts[f];
      }
      // First n % folds folds carry one extra row.
      for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t expect = n / folds + (f < n % folds ? 1 : 0);
        CAPTURE(n);
        CAPTURE(folds);
        CAPTURE(f);
        CHECK(counts[f] == expect);
      }
    }
  }
}

TEST_CASE("fold assignment: deterministic in the seed") {
  const std::vector<std::size_t> a = volfit::fold_assignment(57, 5, 7);
  const std::vector<std::size_t> b = volfit::fold_assignment(57, 5, 7);
  CHECK(a == b);
  const std::vector<std::size_t> c = volfit::fold_assignment(57, 5, 8);
  CHECK(a != c);  // a different seed shuffles differently (57 rows: collision would be freak)
}

TEST_CASE("fold assignment: argument validation") {
  CHECK_THROWS_AS(volfit::fold_assignment(10, 1, 0), ValidationError);
  CHECK_THROWS_AS(volfit::fold_assignment(10, 0, 0), ValidationError);
  CHECK_THROWS_AS(volfit::fold_assignment(4, 5, 0), ValidationError);
  CHECK(volfit::fold_assignment(5, 5, 0).size() == 5);  // leave-one-out boundary
}

TEST_CASE("cross-validation on a noiseless planted cohort is near-perfect") {
  Cohort cohort = planted(3, 200, 2024);
  EvalReport rep = volfit::cross_validate(cohort, FitConfig{}, 5, 13);
  CHECK(rep.n == 200);
  CHECK(rep.pearson_r >= 1.0 - 1e-9);
  CHECK(rep.exceed_fraction == 0.0);
  CHECK(rep.mean_abs_rel_error <= 1e-8);

  // Held-out predictions line up with the true volumes row by row.
  std::vector<double> preds = volfit::cross_validate_predictions(cohort, FitConfig{}, 5, 13);
  REQUIRE(preds.size() == 200);
  for (std::size_t s = 0; s < preds.size(); ++s)
    CHECK(std::abs(preds[s] - cohort.volume(s)) <= 1e-7 * cohort.volume(s));
}

TEST_CASE("leave-one-out on a small planted cohort") {
  Cohort cohort = planted(2, 10, 5);
  EvalReport rep = volfit::cross_validate(cohort, FitConfig{}, 10, 3);
  CHECK(rep.n == 10);
  CHECK(rep.pearson_r >= 1.0 - 1e-6);
  CHECK(rep.exceed_fraction == 0.0);
}

TEST_CASE("cross-validation is bitwise deterministic") {
  Cohort cohort = planted(3, 60, 9);
  const std::vector<double> a = volfit::cross_validate_predictions(cohort, FitConfig{}, 5, 21);
  const std::vector<double> b = volfit::cross_validate_predictions(cohort, FitConfig{}, 5, 21);
  CHECK(a == b);
  EvalReport ra = volfit::cross_validate(cohort, FitConfig{}, 5, 21);
  EvalReport rb = volfit::cross_validate(cohort, FitConfig{}, 5, 21);
  CHECK(ra == rb);

  // A different seed reshuffles the folds and moves the held-out errors.
  const std::vector<double> c = volfit::cross_validate_predictions(cohort, FitConfig{}, 5, 22);
  CHECK(a != c);
}

TEST_CASE("cross-validation rejects undersized inputs") {
  Cohort cohort = planted(2, 4, 1);
  CHECK_THROWS_AS(volfit::cross_validate(cohort, FitConfig{}, 5, 0), ValidationError);
  CHECK_THROWS_AS(volfit::cross_validate(cohort, FitConfig{}, 1, 0), ValidationError);
}
