#pragma once

#include <cstdint>
#include <vector>

#include "volfit/panel.hpp"

namespace volfit::synth {

// Generator for cohorts obeying the scaling law x_i(p, k*lambda) = k * x_i:
// each analyte amount is volume x concentration, concentrations drawn
// per patient from a lognormal, with optional multiplicative measurement
// noise. Analytes with signal_mask[i] == false are generated without the
// volume factor and therefore carry no volume information (used to plant
// ground truth for subset-selection tests).
struct SynthConfig {
  AnalytePanel panel;
  std::vector<double> concentration_log_mean;  // per analyte
  std::vector<double> concentration_log_sd;    // per analyte, >= 0
  double volume_min = 20.0;                    // microliters
  double volume_max = 100.0;
  double noise_cv = 0.0;                       // multiplicative noise sd
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::vector<bool> signal_mask;               // empty = all analytes carry signal

  explicit SynthConfig(AnalytePanel p)
      : panel(std::move(p)),
        concentration_log_mean(panel.size(), 0.0),
        concentration_log_sd(panel.size(), 0.0) {}
};

// Deterministic per (config, seed). Draw order per row s (see rng.hpp for
// the exact primitive mappings):
//   lambda_s = uniform(volume_min, volume_max)
//   then per analyte i: c = exp(log_mean_i + log_sd_i * normal()),
//                       eps = noise_cv * normal(),
//                       x_is = max(0, base * (1 + eps))
// with base = lambda_s * c for signal analytes and base = c for masked ones.
Cohort generate_cohort(const SynthConfig& config);

// Every sample and every volume multiplied by k (k > 0).
Cohort scale_cohort(const Cohort& cohort, double k);

// The 17-analyte panel used as the default fixture: codes in the order
// Chol, TBil, DBil, TP, Alb, Urea, Crea, ALT, AST, Amy, ALP, K, Ca, Na,
// Fe, Glu, LDH, with order-of-magnitude realistic lognormal concentration
// parameters. Fixture values for synthetic experiments, not clinical data.
AnalytePanel reference_panel();
std::vector<double> reference_log_mean();
std::vector<double> reference_log_sd();

// SynthConfig over the reference panel (all analytes carrying signal).
SynthConfig reference_config(std::size_t n, std::uint64_t seed);

}  // namespace volfit::synth
