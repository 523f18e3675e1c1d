#include "volfit/subset_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "volfit/errors.hpp"

namespace volfit {
namespace {

std::vector<std::string> codes_of(const AnalytePanel& panel,
                                  const std::vector<std::size_t>& indices) {
  std::vector<std::string> codes;
  codes.reserve(indices.size());
  for (std::size_t i : indices) codes.push_back(panel.analyte(i));
  return codes;
}

std::vector<std::string> sorted_codes(std::vector<std::string> codes) {
  std::sort(codes.begin(), codes.end());
  return codes;
}

// true when (score_a, subset_a) should be preferred over (score_b, subset_b).
// NaN scores never win. Ties: smaller subset, then lexicographic code order.
bool better(double score_a, const std::vector<std::string>& a, double score_b,
            const std::vector<std::string>& b) {
  const bool a_ok = !std::isnan(score_a);
  const bool b_ok = !std::isnan(score_b);
  if (a_ok != b_ok) return a_ok;
  if (!a_ok) return false;
  if (score_a != score_b) return score_a > score_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return sorted_codes(a) < sorted_codes(b);
}

double score_subset(const Cohort& cohort, const std::vector<std::size_t>& indices,
                    const FitConfig& config, std::size_t folds, std::uint64_t seed) {
  const Cohort projected = cohort.select_analytes(indices);
  try {
    return cross_validate(projected, config, folds, seed).pearson_r;
  } catch (const NumericError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::uint64_t exhaustive_subset_count(std::size_t m, std::size_t max_size) {
  const std::uint64_t cap = kExhaustiveSubsetBudget + 1;
  std::uint64_t total = 0;
  std::uint64_t choose = 1;  // C(m, 0)
  for (std::size_t s = 1; s <= max_size && s <= m; ++s) {
    // C(m, s) = C(m, s-1) * (m - s + 1) / s, exact at every step.
    choose = choose * (m - s + 1) / s;
    total += choose;
    if (total > cap) return cap;
    if (choose > cap) choose = cap;  // avoid overflow on large m
  }
  return total;
}

SubsetSearchResult select_subset(const Cohort& cohort, const FitConfig& config,
                                 std::size_t max_size, std::size_t folds, std::uint64_t seed,
                                 bool greedy) {
  const std::size_t m = cohort.panel().size();
  if (max_size < 1 || max_size > m)
    throw ValidationError("select_subset: max_size must be in [1, m]");

  SubsetSearchResult result;
  result.cv_pearson_r = std::numeric_limits<double>::quiet_NaN();

  auto consider = [&](const std::vector<std::size_t>& indices, double score) {
    std::vector<std::string> codes = codes_of(cohort.panel(), indices);
    if (result.selected.empty() ||
        better(score, codes, result.cv_pearson_r, result.selected)) {
      result.selected = codes;
      result.cv_pearson_r = score;
    }
    result.all_scores.emplace_back(std::move(codes), score);
  };

  if (!greedy) {
    const std::uint64_t count = exhaustive_subset_count(m, max_size);
    if (count > kExhaustiveSubsetBudget)
      throw ValidationError(
          "select_subset: exhaustive search needs more than " +
          std::to_string(kExhaustiveSubsetBudget) +
          " subset evaluations; use greedy forward selection (--greedy)");
    for (std::size_t s = 1; s <= max_size; ++s) {
      // Combinations of size s in lexicographic index order.
      std::vector<std::size_t> indices(s);
      for (std::size_t i = 0; i < s; ++i) indices[i] = i;
      while (true) {
        consider(indices, score_subset(cohort, indices, config, folds, seed));
        std::size_t i = s;
        while (i > 0 && indices[i - 1] == m - s + (i - 1)) --i;
        if (i == 0) break;
        ++indices[i - 1];
        for (std::size_t j = i; j < s; ++j) indices[j] = indices[j - 1] + 1;
      }
    }
    return result;
  }

  // Greedy forward selection: at each step add the analyte whose addition
  // scores best; the overall result is the best subset seen at any step.
  std::vector<std::size_t> current;
  std::vector<bool> used(m, false);
  for (std::size_t step = 0; step < max_size; ++step) {
    bool have_candidate = false;
    double best_score = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> best_codes;
    std::size_t best_index = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (used[a]) continue;
      std::vector<std::size_t> candidate = current;
      candidate.push_back(a);
      std::sort(candidate.begin(), candidate.end());
      const double score = score_subset(cohort, candidate, config, folds, seed);
      std::vector<std::string> codes = codes_of(cohort.panel(), candidate);
      if (!have_candidate || better(score, codes, best_score, best_codes)) {
        have_candidate = true;
        best_score = score;
        best_codes = codes;
        best_index = a;
      }
      consider(candidate, score);
    }
    current.push_back(best_index);
    std::sort(current.begin(), current.end());
    used[best_index] = true;
  }
  return result;
}

}  // namespace volfit
