#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace volfit {

// Ordered list of analyte codes. The order fixes the measurement dimension m
// and the column layout of every sample, feature vector and coefficient
// vector bound to the panel. Codes must be unique, non-empty and free of
// whitespace, commas and quotes so that the CSV and model-file formats stay
// unambiguous. Units are informational labels, never used for conversion.
class AnalytePanel {
 public:
  AnalytePanel(std::vector<std::string> analytes, std::vector<std::string> units);
  // Units default to empty labels.
  explicit AnalytePanel(std::vector<std::string> analytes);

  std::size_t size() const { return analytes_.size(); }
  const std::vector<std::string>& analytes() const { return analytes_; }
  const std::vector<std::string>& units() const { return units_; }
  const std::string& analyte(std::size_t i) const { return analytes_[i]; }
  const std::string& unit(std::size_t i) const { return units_[i]; }

  // Index of a code, or nullopt if absent.
  std::optional<std::size_t> index_of(const std::string& code) const;

  // Same analyte codes in the same order; unit labels are informational and
  // not compared.
  bool same_codes(const AnalytePanel& other) const { return analytes_ == other.analytes_; }

  // Sub-panel with the given analyte indices, in the given order.
  AnalytePanel select(const std::vector<std::size_t>& indices) const;

  bool operator==(const AnalytePanel&) const = default;

 private:
  std::vector<std::string> analytes_;
  std::vector<std::string> units_;
};

// One measurement vector of analyte amounts (concentration x volume).
// Entries are validated finite and >= 0 at construction.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

// Samples plus, optionally, the true volumes lambda_s used for fitting and
// evaluation. Row order is meaningful: fitting accumulates in row order so
// results are reproducible for a given ordering.
class Cohort {
 public:
  Cohort(AnalytePanel panel, std::vector<Sample> samples);
  Cohort(AnalytePanel panel, std::vector<Sample> samples, std::vector<double> volumes);

  const AnalytePanel& panel() const { return panel_; }
  std::size_t n() const { return samples_.size(); }
  const std::vector<Sample>& samples() const { return samples_; }
  const Sample& sample(std::size_t s) const { return samples_[s]; }

  bool has_volumes() const { return volumes_.has_value(); }
  const std::vector<double>& volumes() const;
  double volume(std::size_t s) const { return volumes().at(s); }

  // Cohort restricted to the given analyte indices (columns), keeping rows
  // and volumes.
  Cohort select_analytes(const std::vector<std::size_t>& indices) const;

  // Cohort with rows reordered as rows[i] = old rows[perm[i]].
  Cohort reorder_rows(const std::vector<std::size_t>& perm) const;

 private:
  AnalytePanel panel_;
  std::vector<Sample> samples_;
  std::optional<std::vector<double>> volumes_;

  void validate() const;
};

}  // namespace volfit
