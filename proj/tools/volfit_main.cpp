// volfit: estimate fluid sample volumes from measured analyte amounts.
//
// Subcommands: fit, predict, evaluate, select, synth. Exit codes:
//   0 success, 1 usage error, 2 data validation error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volfit/cross_validation.hpp"
#include "volfit/csv.hpp"
#include "volfit/errors.hpp"
#include "volfit/fitting.hpp"
#include "volfit/metrics.hpp"
#include "volfit/model_io.hpp"
#include "volfit/subset_search.hpp"
#include "volfit/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_codes(const std::string& list) {
  std::vector<std::string> codes;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    if (comma == std::string::npos) {
      codes.push_back(list.substr(start));
      break;
    }
    codes.push_back(list.substr(start, comma - start));
    start = comma + 1;
  }
  for (const auto& c : codes) {
    if (c.empty()) throw UsageError("empty analyte code in list '" + list + "'");
  }
  return codes;
}

std::vector<std::size_t> resolve_codes(const volfit::AnalytePanel& panel,
                                       const std::vector<std::string>& codes) {
  std::vector<std::size_t> indices;
  indices.reserve(codes.size());
  for (const auto& code : codes) {
    auto idx = panel.index_of(code);
    if (!idx) throw volfit::ValidationError("unknown analyte column '" + code + "'");
    indices.push_back(*idx);
  }
  return indices;
}

std::string format_fixed6(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void print_report(const volfit::EvalReport& report) {
  std::cout << "pearson_r " << format_fixed6(report.pearson_r) << "\n"
            << "exceed_fraction " << format_fixed6(report.exceed_fraction) << "\n"
            << "threshold " << format_fixed6(report.threshold) << "\n"
            << "n " << report.n << "\n"
            << "mean_abs_rel_error " << format_fixed6(report.mean_abs_rel_error) << "\n";
}

// In-sample report that tolerates an undefined correlation (n = 1 or constant
// data): pearson_r is NaN then, the other fields still report.
volfit::EvalReport training_report(const std::vector<double>& predicted,
                                   const std::vector<double>& truth, double threshold) {
  volfit::EvalReport report;
  report.n = truth.size();
  report.threshold = threshold;
  report.exceed_fraction = volfit::exceedance_fraction(predicted, truth, threshold);
  report.mean_abs_rel_error = volfit::mean_abs_rel_error(predicted, truth);
  try {
    report.pearson_r = volfit::pearson_correlation(predicted, truth);
  } catch (const volfit::NumericError&) {
    report.pearson_r = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

void check_fit_flags(double ridge, double rank_tolerance) {
  if (!std::isfinite(ridge) || ridge < 0.0) throw UsageError("--ridge must be finite and >= 0");
  if (!(rank_tolerance > 0.0) || !(rank_tolerance < 1.0))
    throw UsageError("--rank-tolerance must be in (0, 1)");
}

volfit::Cohort read_labeled_cohort(const std::string& path) {
  volfit::Cohort cohort = volfit::io::read_cohort_csv(path);
  if (!cohort.has_volumes())
    throw volfit::ValidationError(path + ": missing 'volume' column (required here)");
  return cohort;
}

// ------------------------------------------------------------------- fit ---

struct FitArgs {
  std::string input, output, analytes;
  double ridge = 0.0;
  double rank_tolerance = 1e-10;
};

int cmd_fit(const FitArgs& args) {
  check_fit_flags(args.ridge, args.rank_tolerance);
  volfit::Cohort cohort = read_labeled_cohort(args.input);
  if (!args.analytes.empty())
    cohort = cohort.select_analytes(resolve_codes(cohort.panel(), split_codes(args.analytes)));

  volfit::FitConfig config{.ridge = args.ridge, .rank_tolerance = args.rank_tolerance};
  volfit::VolumeModel model = volfit::fit(cohort, config);
  volfit::io::save_model(args.output, model);

  print_report(training_report(volfit::predict_all(model, cohort), cohort.volumes(), 0.05));
  return kExitOk;
}

// --------------------------------------------------------------- predict ---

struct PredictArgs {
  std::string model, input, output;
};

int cmd_predict(const PredictArgs& args) {
  const volfit::VolumeModel model = volfit::io::load_model(args.model);
  const volfit::io::CsvTable table = volfit::io::read_csv(args.input);

  for (const auto& name : table.header) {
    if (name == "predicted_volume")
      throw volfit::ValidationError(args.input + ": input already has a 'predicted_volume' column");
  }
  // Columns are bound by header name; extra columns pass through untouched.
  std::vector<std::size_t> columns;
  columns.reserve(model.m());
  for (const auto& code : model.panel().analytes()) {
    bool found = false;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (table.header[i] == code) {
        columns.push_back(i);
        found = true;
        break;
      }
    }
    if (!found)
      throw volfit::ValidationError(args.input + ": missing required analyte column '" + code + "'");
  }

  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += ",predicted_volume\n";

  std::vector<double> values(model.m());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string line = std::to_string(r + 2);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::string where = args.input + ":" + line + ", column '" +
                                model.panel().analyte(i) + "'";
      values[i] = volfit::io::parse_number(table.rows[r][columns[i]], where);
      if (values[i] < 0.0) throw volfit::ValidationError(where + ": analyte amount must be >= 0");
    }
    const double predicted = volfit::predict(model, volfit::Sample(values));
    for (const auto& field : table.rows[r]) {
      // Echo input fields byte-for-byte.
      out += field;
      out += ',';
    }
    out.pop_back();
    out += ',';
    out += volfit::io::format_g17(predicted);
    out += '\n';
  }
  volfit::io::write_file(args.output, out);
  return kExitOk;
}

// -------------------------------------------------------------- evaluate ---

struct EvaluateArgs {
  std::string model, input, analytes;
  double threshold = 0.05;
  std::optional<std::size_t> folds;
  std::uint64_t seed = 0;
  double ridge = 0.0;
  double rank_tolerance = 1e-10;
};

int cmd_evaluate(const EvaluateArgs& args) {
  if (!(args.threshold > 0.0) || !std::isfinite(args.threshold))
    throw UsageError("--threshold must be finite and > 0");
  if (args.folds && *args.folds < 2) throw UsageError("--folds must be >= 2");
  if (args.folds && !args.model.empty())
    throw UsageError("--folds cross-validates a fresh fit; it cannot be combined with --model");
  if (!args.folds && args.model.empty())
    throw UsageError("either --model (in-sample evaluation) or --folds (cross-validation) is required");
  if (!args.folds && !args.analytes.empty())
    throw UsageError("--analytes applies only to cross-validation mode (--folds)");
  check_fit_flags(args.ridge, args.rank_tolerance);

  volfit::Cohort cohort = read_labeled_cohort(args.input);

  if (args.folds) {
    if (!args.analytes.empty())
      cohort = cohort.select_analytes(resolve_codes(cohort.panel(), split_codes(args.analytes)));
    volfit::FitConfig config{.ridge = args.ridge, .rank_tolerance = args.rank_tolerance};
    print_report(volfit::cross_validate(cohort, config, *args.folds, args.seed, args.threshold));
    return kExitOk;
  }

  const volfit::VolumeModel model = volfit::io::load_model(args.model);
  // Bind the cohort's columns to the model panel by name.
  cohort = cohort.select_analytes(resolve_codes(cohort.panel(), model.panel().analytes()));
  const std::vector<double> predicted = volfit::predict_all(model, cohort);
  print_report(volfit::make_report(predicted, cohort.volumes(), args.threshold));
  return kExitOk;
}

// ---------------------------------------------------------------- select ---

struct SelectArgs {
  std::string input, analytes;
  std::size_t max_size = 3;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  bool greedy = false;
  double ridge = 0.0;
  double rank_tolerance = 1e-10;
};

int cmd_select(const SelectArgs& args) {
  if (args.max_size < 1) throw UsageError("--max-size must be >= 1");
  if (args.folds < 2) throw UsageError("--folds must be >= 2");
  check_fit_flags(args.ridge, args.rank_tolerance);

  volfit::Cohort cohort = read_labeled_cohort(args.input);
  if (!args.analytes.empty())
    cohort = cohort.select_analytes(resolve_codes(cohort.panel(), split_codes(args.analytes)));
  if (args.max_size > cohort.panel().size())
    throw UsageError("--max-size exceeds the number of analyte columns");
  if (!args.greedy) {
    const auto count = volfit::exhaustive_subset_count(cohort.panel().size(), args.max_size);
    if (count > volfit::kExhaustiveSubsetBudget)
      throw UsageError("exhaustive search needs more than " +
                       std::to_string(volfit::kExhaustiveSubsetBudget) +
                       " subset evaluations; pass --greedy for forward selection");
  }

  volfit::FitConfig config{.ridge = args.ridge, .rank_tolerance = args.rank_tolerance};
  const volfit::SubsetSearchResult result = volfit::select_subset(
      cohort, config, args.max_size, args.folds, args.seed, args.greedy);

  auto join = [](const std::vector<std::string>& codes) {
    std::string s;
    for (const auto& c : codes) {
      if (!s.empty()) s += ',';
      s += c;
    }
    return s;
  };
  std::cout << "selected " << join(result.selected) << "\n"
            << "cv_pearson_r " << format_fixed6(result.cv_pearson_r) << "\n"
            << "subsets_evaluated " << result.all_scores.size() << "\n";
  for (const auto& [codes, score] : result.all_scores)
    std::cout << "subset " << join(codes) << " " << format_fixed6(score) << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- synth ---

struct SynthArgs {
  std::string output, analytes, signal;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double noise_cv = 0.0;
  double volume_min = 20.0;
  double volume_max = 100.0;
};

int cmd_synth(const SynthArgs& args) {
  if (args.n < 1) throw UsageError("--n must be >= 1");
  if (!std::isfinite(args.noise_cv) || args.noise_cv < 0.0)
    throw UsageError("--noise-cv must be finite and >= 0");
  if (!(args.volume_min > 0.0) || !std::isfinite(args.volume_min))
    throw UsageError("--volume-min must be finite and > 0");
  if (!(args.volume_max >= args.volume_min) || !std::isfinite(args.volume_max))
    throw UsageError("--volume-max must be >= --volume-min");

  volfit::synth::SynthConfig config = volfit::synth::reference_config(args.n, args.seed);
  config.noise_cv = args.noise_cv;
  config.volume_min = args.volume_min;
  config.volume_max = args.volume_max;

  if (!args.analytes.empty()) {
    const auto indices = resolve_codes(config.panel, split_codes(args.analytes));
    std::vector<double> mu, sd;
    for (std::size_t i : indices) {
      mu.push_back(config.concentration_log_mean[i]);
      sd.push_back(config.concentration_log_sd[i]);
    }
    config.panel = config.panel.select(indices);
    config.concentration_log_mean = std::move(mu);
    config.concentration_log_sd = std::move(sd);
  }
  if (!args.signal.empty()) {
    const auto signal_indices = resolve_codes(config.panel, split_codes(args.signal));
    std::vector<bool> mask(config.panel.size(), false);
    for (std::size_t i : signal_indices) mask[i] = true;
    config.signal_mask = std::move(mask);
  }

  volfit::io::write_cohort_csv(args.output, volfit::synth::generate_cohort(config));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume estimation from analyte amounts via a degree-1 homogeneous model"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "fit a volume model on a labeled cohort CSV");
  fit->add_option("--input", fit_args.input, "cohort CSV with a final 'volume' column")->required();
  fit->add_option("--output", fit_args.output, "model file to write")->required();
  fit->add_option("--ridge", fit_args.ridge, "ridge penalty (default 0)");
  fit->add_option("--rank-tolerance", fit_args.rank_tolerance,
                  "relative eigenvalue cutoff (default 1e-10)");
  fit->add_option("--analytes", fit_args.analytes, "comma list restricting the analyte columns");

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "append predicted volumes to a cohort CSV");
  predict->add_option("--model", predict_args.model, "model file")->required();
  predict->add_option("--input", predict_args.input, "input CSV (columns bound by header name)")
      ->required();
  predict->add_option("--output", predict_args.output, "output CSV with predicted_volume column")
      ->required();

  EvaluateArgs eval_args;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "report prediction quality on a labeled cohort");
  evaluate->add_option("--input", eval_args.input, "cohort CSV with a final 'volume' column")
      ->required();
  evaluate->add_option("--model", eval_args.model, "model file (in-sample evaluation)");
  evaluate->add_option("--threshold", eval_args.threshold,
                       "relative-error threshold (default 0.05)");
  evaluate->add_option("--folds", eval_args.folds, "cross-validate a fresh fit with this many folds");
  evaluate->add_option("--seed", eval_args.seed, "fold-assignment seed (default 0)");
  evaluate->add_option("--ridge", eval_args.ridge, "ridge penalty for CV fits");
  evaluate->add_option("--rank-tolerance", eval_args.rank_tolerance,
                       "relative eigenvalue cutoff for CV fits");
  evaluate->add_option("--analytes", eval_args.analytes, "comma list restricting CV fits");

  SelectArgs select_args;
  CLI::App* select =
      app.add_subcommand("select", "search for the analyte subset with the best CV correlation");
  select->add_option("--input", select_args.input, "cohort CSV with a final 'volume' column")
      ->required();
  select->add_option("--max-size", select_args.max_size, "largest subset size (default 3)");
  select->add_option("--folds", select_args.folds, "CV folds per candidate (default 5)");
  select->add_option("--seed", select_args.seed, "fold-assignment seed (default 0)");
  select->add_flag("--greedy", select_args.greedy, "greedy forward selection");
  select->add_option("--ridge", select_args.ridge, "ridge penalty for CV fits");
  select->add_option("--rank-tolerance", select_args.rank_tolerance,
                     "relative eigenvalue cutoff for CV fits");
  select->add_option("--analytes", select_args.analytes, "comma list restricting the search pool");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "generate a deterministic synthetic cohort CSV");
  synth->add_option("--output", synth_args.output, "cohort CSV to write")->required();
  synth->add_option("--n", synth_args.n, "number of rows")->required();
  synth->add_option("--seed", synth_args.seed, "generator seed (default 0)");
  synth->add_option("--noise-cv", synth_args.noise_cv, "multiplicative noise sd (default 0)");
  synth->add_option("--volume-min", synth_args.volume_min, "lower volume bound, uL (default 20)");
  synth->add_option("--volume-max", synth_args.volume_max, "upper volume bound, uL (default 100)");
  synth->add_option("--analytes", synth_args.analytes,
                    "comma list restricting the 17-analyte reference panel");
  synth->add_option("--signal", synth_args.signal,
                    "comma list of analytes carrying volume signal (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_args);
    if (predict->parsed()) return cmd_predict(predict_args);
    if (evaluate->parsed()) return cmd_evaluate(eval_args);
    if (select->parsed()) return cmd_select(select_args);
    if (synth->parsed()) return cmd_synth(synth_args);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const volfit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const volfit::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
