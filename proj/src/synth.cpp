#include "volfit/synth.hpp"

#include <algorithm>
#include <cmath>

#include "volfit/errors.hpp"
#include "volfit/kernels.hpp"
#include "volfit/rng.hpp"

namespace volfit::synth {
namespace {

void validate_config(const SynthConfig& config) {
  const std::size_t m = config.panel.size();
  if (config.concentration_log_mean.size() != m || config.concentration_log_sd.size() != m)
    throw ValidationError("synth: concentration parameter count does not match panel");
  for (double sd : config.concentration_log_sd) {
    if (!std::isfinite(sd) || sd < 0.0)
      throw ValidationError("synth: concentration_log_sd must be finite and >= 0");
  }
  for (double mu : config.concentration_log_mean) {
    if (!std::isfinite(mu)) throw ValidationError("synth: non-finite concentration_log_mean");
  }
  if (!(config.volume_min > 0.0) || !std::isfinite(config.volume_min))
    throw ValidationError("synth: volume_min must be finite and > 0");
  if (!(config.volume_max >= config.volume_min) || !std::isfinite(config.volume_max))
    throw ValidationError("synth: volume_max must be >= volume_min");
  if (!std::isfinite(config.noise_cv) || config.noise_cv < 0.0)
    throw ValidationError("synth: noise_cv must be finite and >= 0");
  if (config.n < 1) throw ValidationError("synth: n must be >= 1");
  if (!config.signal_mask.empty() && config.signal_mask.size() != m)
    throw ValidationError("synth: signal_mask length does not match panel");
}

}  // namespace

Cohort generate_cohort(const SynthConfig& config) {
  validate_config(config);
  const std::size_t m = config.panel.size();
  rng::Stream stream(config.seed);

  std::vector<Sample> samples;
  std::vector<double> volumes;
  samples.reserve(config.n);
  volumes.reserve(config.n);

  for (std::size_t s = 0; s < config.n; ++s) {
    const double lambda = stream.uniform(config.volume_min, config.volume_max);
    std::vector<double> values(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double concentration =
          std::exp(config.concentration_log_mean[i] +
                   config.concentration_log_sd[i] * stream.normal());
      const double eps = config.noise_cv * stream.normal();
      const bool signal = config.signal_mask.empty() || config.signal_mask[i];
      const double base = signal ? lambda * concentration : concentration;
      values[i] = std::max(0.0, base * (1.0 + eps));
    }
    samples.emplace_back(std::move(values));
    volumes.push_back(lambda);
  }
  return Cohort(config.panel, std::move(samples), std::move(volumes));
}

Cohort scale_cohort(const Cohort& cohort, double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw ValidationError("scale_cohort: k must be finite and > 0");
  const auto& ops = kernels::active();
  std::vector<Sample> samples;
  samples.reserve(cohort.n());
  for (const Sample& s : cohort.samples()) {
    std::vector<double> scaled(s.size());
    ops.scale(k, s.values().data(), scaled.data(), s.size());
    samples.emplace_back(std::move(scaled));
  }
  if (!cohort.has_volumes()) return Cohort(cohort.panel(), std::move(samples));
  std::vector<double> volumes(cohort.n());
  ops.scale(k, cohort.volumes().data(), volumes.data(), cohort.n());
  return Cohort(cohort.panel(), std::move(samples), std::move(volumes));
}

namespace {

struct AnalyteFixture {
  const char* code;
  const char* unit;
  double mean;   // typical adult level, order of magnitude only
  double log_sd;
};

// Fixture values: plausible magnitudes and between-subject spreads for a
// synthetic population. Not measured data.
constexpr AnalyteFixture kReferenceAnalytes[] = {
    {"Chol", "mmol/L", 5.0, 0.20},
    {"TBil", "umol/L", 10.0, 0.35},
    {"DBil", "umol/L", 3.0, 0.40},
    {"TP", "g/L", 72.0, 0.05},
    {"Alb", "g/L", 45.0, 0.06},
    {"Urea", "mmol/L", 5.5, 0.25},
    {"Crea", "umol/L", 80.0, 0.15},
    {"ALT", "U/L", 25.0, 0.40},
    {"AST", "U/L", 24.0, 0.35},
    {"Amy", "U/L", 70.0, 0.30},
    {"ALP", "U/L", 75.0, 0.25},
    {"K", "mmol/L", 4.3, 0.05},
    {"Ca", "mmol/L", 2.4, 0.04},
    {"Na", "mmol/L", 140.0, 0.015},
    {"Fe", "umol/L", 18.0, 0.30},
    {"Glu", "mmol/L", 5.2, 0.15},
    {"LDH", "U/L", 170.0, 0.25},
};

}  // namespace

AnalytePanel reference_panel() {
  std::vector<std::string> codes, units;
  for (const auto& a : kReferenceAnalytes) {
    codes.emplace_back(a.code);
    units.emplace_back(a.unit);
  }
  return AnalytePanel(std::move(codes), std::move(units));
}

std::vector<double> reference_log_mean() {
  std::vector<double> out;
  for (const auto& a : kReferenceAnalytes) out.push_back(std::log(a.mean));
  return out;
}

std::vector<double> reference_log_sd() {
  std::vector<double> out;
  for (const auto& a : kReferenceAnalytes) out.push_back(a.log_sd);
  return out;
}

SynthConfig reference_config(std::size_t n, std::uint64_t seed) {
  SynthConfig config(reference_panel());
  config.concentration_log_mean = reference_log_mean();
  config.concentration_log_sd = reference_log_sd();
  config.n = n;
  config.seed = seed;
  return config;
}

}  // namespace volfit::synth
