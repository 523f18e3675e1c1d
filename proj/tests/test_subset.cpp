#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "volfit/errors.hpp"
#include "volfit/subset_search.hpp"
#include "volfit/synth.hpp"

using volfit::Cohort;
using volfit::FitConfig;
using volfit::SubsetSearchResult;
using volfit::ValidationError;

namespace {

// Cohort where exactly the analytes in `signal` scale with volume; the rest
// are volume-free concentrations. Only the signal columns can predict.
// Signal analytes get a tight concentration spread (their biological
// variation is the irreducible error of the volume estimate), the masked
// ones a wide spread so they look like live columns.
Cohort masked_cohort(const std::vector<std::string>& codes,
                     const std::vector<std::string>& signal, std::size_t n,
                     std::uint64_t seed) {
  volfit::synth::SynthConfig config{volfit::AnalytePanel(codes)};
  config.concentration_log_mean.assign(codes.size(), 0.0);
  config.concentration_log_sd.assign(codes.size(), 0.3);
  config.noise_cv = 0.02;
  config.n = n;
  config.seed = seed;
  config.signal_mask.assign(codes.size(), false);
  for (const std::string& code : signal) {
    auto idx = config.panel.index_of(code);
    REQUIRE(idx.has_value());
    config.signal_mask[*idx] = true;
    config.concentration_log_sd[*idx] = 0.05;
  }
  return volfit::synth::generate_cohort(config);
}

}  // namespace

TEST_CASE("exhaustive subset counts") {
  // C(4,1) + C(4,2) = 10, C(17,1..3) = 17 + 136 + 680 = 833.
  CHECK(volfit::exhaustive_subset_count(4, 2) == 10);
  CHECK(volfit::exhaustive_subset_count(17, 3) == 833);
  CHECK(volfit::exhaustive_subset_count(3, 3) == 7);
  CHECK(volfit::exhaustive_subset_count(3, 5) == 7);  // max_size clamps at m
  // C(30,1..5) = 174436, beyond the exhaustive budget: count saturates.
  CHECK(volfit::exhaustive_subset_count(30, 5) > volfit::kExhaustiveSubsetBudget);
}

TEST_CASE("exhaustive search recovers planted signal analytes") {
  const std::vector<std::string> codes = {"A", "B", "C", "D", "E", "F", "G", "H"};
  Cohort cohort = masked_cohort(codes, {"B", "E", "G"}, 250, 31);
  SubsetSearchResult result =
      volfit::select_subset(cohort, FitConfig{}, 3, 5, 17, /*greedy=*/false);
  CHECK(result.selected == std::vector<std::string>{"B", "E", "G"});
  CHECK(result.cv_pearson_r > 0.99);
  // All subsets of size 1..3 out of 8 were scored: 8 + 28 + 56 = 92.
  CHECK(result.all_scores.size() == 92);
  // The reported winner's score appears in the score list.
  bool found = false;
  for (const auto& [subset, score] : result.all_scores)
    if (subset == result.selected) {
      found = true;
      CHECK(score == result.cv_pearson_r);
    }
  CHECK(found);
}

TEST_CASE("greedy forward selection finds the same planted signal") {
  const std::vector<std::string> codes = {"A", "B", "C", "D", "E", "F", "G", "H"};
  Cohort cohort = masked_cohort(codes, {"B", "E", "G"}, 250, 31);
  SubsetSearchResult result =
      volfit::select_subset(cohort, FitConfig{}, 3, 5, 17, /*greedy=*/true);
  CHECK(result.selected == std::vector<std::string>{"B", "E", "G"});
  // Greedy scores at most m + (m-1) + (m-2) = 21 candidates here.
  CHECK(result.all_scores.size() <= 21);
}

TEST_CASE("max_size 1 on a single-analyte cohort") {
  Cohort cohort = masked_cohort({"A"}, {"A"}, 60, 5);
  SubsetSearchResult result = volfit::select_subset(cohort, FitConfig{}, 1, 5, 3);
  CHECK(result.selected == std::vector<std::string>{"A"});
  CHECK(result.all_scores.size() == 1);
}

TEST_CASE("exact score ties break lexicographically") {
  // The two columns are bitwise copies of each other, so {Q} and {P} get
  // bitwise-equal CV scores and only the tie-break can decide: the
  // lexicographically first sorted code list wins.
  Cohort base = masked_cohort({"P"}, {"P"}, 120, 77);
  std::vector<volfit::Sample> samples;
  for (std::size_t s = 0; s < base.n(); ++s) {
    const double v = base.sample(s).values()[0];
    samples.emplace_back(std::vector<double>{v, v});
  }
  Cohort cohort(volfit::AnalytePanel({"Q", "P"}), std::move(samples),
                base.volumes());
  SubsetSearchResult result = volfit::select_subset(cohort, FitConfig{}, 1, 5, 9);
  REQUIRE(result.all_scores.size() == 2);  // {Q}, then {P}
  CHECK(result.all_scores[0].second == result.all_scores[1].second);
  CHECK(result.selected == std::vector<std::string>{"P"});
}

TEST_CASE("subset selection is deterministic") {
  const std::vector<std::string> codes = {"A", "B", "C", "D", "E"};
  Cohort cohort = masked_cohort(codes, {"B", "D"}, 100, 13);
  SubsetSearchResult a = volfit::select_subset(cohort, FitConfig{}, 2, 5, 7);
  SubsetSearchResult b = volfit::select_subset(cohort, FitConfig{}, 2, 5, 7);
  CHECK(a.selected == b.selected);
  CHECK(a.cv_pearson_r == b.cv_pearson_r);
  CHECK(a.all_scores == b.all_scores);
}

TEST_CASE("exhaustive search over budget demands greedy mode") {
  std::vector<std::string> codes;
  for (int i = 0; i < 30; ++i) codes.push_back("A" + std::to_string(i));
  Cohort cohort = masked_cohort(codes, {"A0"}, 40, 3);
  CHECK_THROWS_WITH_AS(volfit::select_subset(cohort, FitConfig{}, 5, 5, 1, /*greedy=*/false),
                       doctest::Contains("--greedy"), ValidationError);
  // Greedy mode handles the same request.
  SubsetSearchResult result = volfit::select_subset(cohort, FitConfig{}, 5, 5, 1, /*greedy=*/true);
  CHECK(!result.selected.empty());
  CHECK(std::find(result.selected.begin(), result.selected.end(), "A0") != result.selected.end());
}

TEST_CASE("subset selection argument validation") {
  Cohort cohort = masked_cohort({"A", "B"}, {"A"}, 30, 1);
  CHECK_THROWS_AS(volfit::select_subset(cohort, FitConfig{}, 0, 5, 1), ValidationError);
}
