#pragma once

#include <cstdint>
#include <vector>

#include "volfit/fitting.hpp"
#include "volfit/metrics.hpp"
#include "volfit/panel.hpp"

namespace volfit {

// Seeded fold assignment: indices 0..n-1 are shuffled (Fisher-Yates over the
// documented rng::Stream) and cut into contiguous blocks; the first n % folds
// blocks get one extra row. assignment[row] = fold id.
std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t folds, std::uint64_t seed);

// For each fold: fit on the other folds (rows kept in original order),
// predict the held-out rows, then aggregate every held-out prediction into
// one report against the true volumes. Bitwise deterministic for a fixed
// (cohort, config, folds, seed).
EvalReport cross_validate(const Cohort& cohort, const FitConfig& config, std::size_t folds,
                          std::uint64_t seed, double threshold = 0.05);

// The held-out predictions themselves, indexed by original row.
std::vector<double> cross_validate_predictions(const Cohort& cohort, const FitConfig& config,
                                               std::size_t folds, std::uint64_t seed);

}  // namespace volfit
