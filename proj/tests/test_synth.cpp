#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "volfit/cross_validation.hpp"
#include "volfit/errors.hpp"
#include "volfit/fitting.hpp"
#include "volfit/subset_search.hpp"
#include "volfit/synth.hpp"

using volfit::Cohort;
using volfit::ValidationError;
using volfit::synth::SynthConfig;

namespace {

SynthConfig small_config(std::size_t n, std::uint64_t seed) {
  SynthConfig config{volfit::AnalytePanel({"A", "B", "C"})};
  config.concentration_log_mean = {0.0, 1.0, -0.5};
  config.concentration_log_sd = {0.3, 0.2, 0.4};
  config.n = n;
  config.seed = seed;
  return config;
}

bool cohorts_bitwise_equal(const Cohort& a, const Cohort& b) {
  if (a.n() != b.n() || !(a.panel() == b.panel())) return false;
  for (std::size_t s = 0; s < a.n(); ++s)
    if (a.sample(s).values() != b.sample(s).values()) return false;
  return a.volumes() == b.volumes();
}

}  // namespace

TEST_CASE("generation is deterministic per (config, seed)") {
  const SynthConfig config = small_config(50, 12345);
  Cohort a = volfit::synth::generate_cohort(config);
  Cohort b = volfit::synth::generate_cohort(config);
  CHECK(cohorts_bitwise_equal(a, b));

  SynthConfig other = config;
  other.seed = 12346;
  CHECK(!cohorts_bitwise_equal(a, volfit::synth::generate_cohort(other)));
}

TEST_CASE("generated volumes stay inside the configured range") {
  SynthConfig config = small_config(500, 7);
  config.volume_min = 20.0;
  config.volume_max = 100.0;
  Cohort cohort = volfit::synth::generate_cohort(config);
  REQUIRE(cohort.n() == 500);
  for (double v : cohort.volumes()) {
    CHECK(v >= 20.0);
    CHECK(v < 100.0);
  }
}

TEST_CASE("noise-free amounts factor exactly as volume times concentration") {
  // With log_sd = 0 every patient draws the same concentration exp(log_mean),
  // so x_is / lambda_s must equal it up to one rounding.
  SynthConfig config = small_config(80, 3);
  config.concentration_log_sd = {0.0, 0.0, 0.0};
  Cohort cohort = volfit::synth::generate_cohort(config);
  for (std::size_t i = 0; i < 3; ++i) {
    const double c = std::exp(config.concentration_log_mean[i]);
    for (std::size_t s = 0; s < cohort.n(); ++s) {
      const double ratio = cohort.sample(s).values()[i] / cohort.volume(s);
      CHECK(std::abs(ratio - c) <= 1e-15 * c);
    }
  }
}

TEST_CASE("scale_cohort: frozen behaviors") {
  Cohort cohort = volfit::synth::generate_cohort(small_config(40, 9));
  CHECK(cohorts_bitwise_equal(volfit::synth::scale_cohort(cohort, 1.0), cohort));

  // Power-of-two scaling is exact, so x2 then x0.5 round-trips bitwise.
  Cohort doubled = volfit::synth::scale_cohort(cohort, 2.0);
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    CHECK(doubled.volume(s) == 2.0 * cohort.volume(s));
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(doubled.sample(s).values()[i] == 2.0 * cohort.sample(s).values()[i]);
  }
  CHECK(cohorts_bitwise_equal(volfit::synth::scale_cohort(doubled, 0.5), cohort));

  // General factors round-trip within 1e-15 relative.
  Cohort tripled = volfit::synth::scale_cohort(cohort, 3.0);
  Cohort back = volfit::synth::scale_cohort(tripled, 1.0 / 3.0);
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    CHECK(std::abs(back.volume(s) - cohort.volume(s)) <= 1e-15 * cohort.volume(s));
    for (std::size_t i = 0; i < 3; ++i) {
      const double orig = cohort.sample(s).values()[i];
      CHECK(std::abs(back.sample(s).values()[i] - orig) <= 1e-15 * (1.0 + orig));
    }
  }

  CHECK_THROWS_AS(volfit::synth::scale_cohort(cohort, 0.0), ValidationError);
  CHECK_THROWS_AS(volfit::synth::scale_cohort(cohort, -2.0), ValidationError);
  CHECK_THROWS_AS(volfit::synth::scale_cohort(cohort, std::nan("")), ValidationError);
}

TEST_CASE("pipeline is equivariant under global rescaling") {
  // fit(scale(cohort, k)) predicts k times what fit(cohort) predicts: the
  // whole pipeline inherits the model's homogeneity.
  SynthConfig config = small_config(120, 21);
  config.noise_cv = 0.05;
  Cohort cohort = volfit::synth::generate_cohort(config);
  Cohort scaled = volfit::synth::scale_cohort(cohort, 3.0);

  volfit::VolumeModel base = volfit::fit(cohort);
  volfit::VolumeModel rescaled = volfit::fit(scaled);
  std::vector<double> p_base = volfit::predict_all(base, cohort);
  std::vector<double> p_rescaled = volfit::predict_all(rescaled, scaled);
  REQUIRE(p_base.size() == p_rescaled.size());
  // The factor 3 is not a power of two, so scaling rounds the inputs; that
  // perturbation passes through the (squared-condition-number) normal
  // equations of this noisy cohort, hence the modest tolerance here.
  for (std::size_t s = 0; s < p_base.size(); ++s)
    CHECK(std::abs(p_rescaled[s] - 3.0 * p_base[s]) <= 1e-6 * (1.0 + std::abs(3.0 * p_base[s])));

  // Evaluation reports agree too: relative errors are scale-free.
  volfit::EvalReport r_base = volfit::cross_validate(cohort, volfit::FitConfig{}, 5, 2);
  volfit::EvalReport r_scaled = volfit::cross_validate(scaled, volfit::FitConfig{}, 5, 2);
  CHECK(r_base.pearson_r == doctest::Approx(r_scaled.pearson_r).epsilon(1e-9));
  CHECK(r_base.exceed_fraction == r_scaled.exceed_fraction);
}

TEST_CASE("masked analytes carry no volume signal") {
  SynthConfig config = small_config(300, 33);
  config.noise_cv = 0.02;
  config.signal_mask = {true, false, false};
  // The signal analyte's concentration spread is the irreducible error of a
  // single-column volume estimate, so keep it small; the masked column stays
  // wide and still predicts nothing.
  config.concentration_log_sd[0] = 0.03;
  Cohort cohort = volfit::synth::generate_cohort(config);

  // The one signal analyte reconstructs volume well; a masked one cannot.
  volfit::EvalReport with_signal =
      volfit::cross_validate(cohort.select_analytes({0}), volfit::FitConfig{}, 5, 4);
  volfit::EvalReport masked_only =
      volfit::cross_validate(cohort.select_analytes({1}), volfit::FitConfig{}, 5, 4);
  CHECK(with_signal.pearson_r > 0.98);
  CHECK(masked_only.pearson_r < 0.5);
}

TEST_CASE("config validation") {
  SynthConfig config = small_config(10, 1);
  config.concentration_log_mean = {0.0};  // wrong length
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);

  config = small_config(10, 1);
  config.concentration_log_sd = {0.1, -0.1, 0.1};
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);

  config = small_config(10, 1);
  config.volume_min = 100.0;
  config.volume_max = 20.0;
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);

  config = small_config(10, 1);
  config.volume_min = 0.0;
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);

  config = small_config(10, 1);
  config.noise_cv = -0.5;
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);

  config = small_config(0, 1);
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);

  config = small_config(10, 1);
  config.signal_mask = {true};  // wrong length
  CHECK_THROWS_AS(volfit::synth::generate_cohort(config), ValidationError);
}

TEST_CASE("reference panel fixture") {
  const volfit::AnalytePanel panel = volfit::synth::reference_panel();
  CHECK(panel.size() == 17);
  CHECK(panel.analyte(0) == "Chol");
  CHECK(panel.analyte(3) == "TP");
  CHECK(panel.analyte(11) == "K");
  CHECK(panel.analyte(13) == "Na");
  CHECK(panel.analyte(16) == "LDH");
  CHECK(volfit::synth::reference_log_mean().size() == 17);
  CHECK(volfit::synth::reference_log_sd().size() == 17);

  const SynthConfig config = volfit::synth::reference_config(25, 99);
  Cohort cohort = volfit::synth::generate_cohort(config);
  CHECK(cohort.n() == 25);
  CHECK(cohort.panel().size() == 17);
}
