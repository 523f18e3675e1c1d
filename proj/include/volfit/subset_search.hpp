#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "volfit/cross_validation.hpp"

namespace volfit {

struct SubsetSearchResult {
  std::vector<std::string> selected;  // analyte codes, in panel order
  double cv_pearson_r = 0.0;
  // Every evaluated subset with its CV score, in evaluation order. A score
  // of NaN marks a subset whose correlation was undefined.
  std::vector<std::pair<std::vector<std::string>, double>> all_scores;
};

// Budget for exhaustive enumeration; beyond it the caller must ask for
// greedy forward selection.
inline constexpr std::uint64_t kExhaustiveSubsetBudget = 100000;

// Number of candidate subsets of size 1..max_size out of m analytes,
// saturating at kExhaustiveSubsetBudget + 1.
std::uint64_t exhaustive_subset_count(std::size_t m, std::size_t max_size);

// Scores analyte subsets by cross-validated Pearson correlation and returns
// the best one. Exhaustive mode enumerates every subset of size 1..max_size
// (error if the count exceeds the budget, pointing at greedy mode); greedy
// mode grows the subset one analyte at a time, keeping the addition with the
// best CV score. Ties are broken toward the smaller subset, then the
// lexicographically smaller sorted code list.
SubsetSearchResult select_subset(const Cohort& cohort, const FitConfig& config,
                                 std::size_t max_size, std::size_t folds, std::uint64_t seed,
                                 bool greedy = false);

}  // namespace volfit
