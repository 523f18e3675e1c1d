#include "volfit/panel.hpp"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "volfit/errors.hpp"

namespace volfit {
namespace {

bool valid_code(const std::string& code) {
  if (code.empty()) return false;
  for (char c : code) {
    if (c == ',' || c == '"' || c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
  }
  return true;
}

bool valid_unit(const std::string& unit) {
  for (char c : unit) {
    if (c == '\t' || c == '\r' || c == '\n') return false;
  }
  return true;
}

}  // namespace

AnalytePanel::AnalytePanel(std::vector<std::string> analytes, std::vector<std::string> units)
    : analytes_(std::move(analytes)), units_(std::move(units)) {
  if (analytes_.empty()) throw ValidationError("panel: must contain at least one analyte");
  if (units_.empty()) units_.resize(analytes_.size());
  if (units_.size() != analytes_.size())
    throw ValidationError("panel: units count does not match analyte count");
  std::unordered_set<std::string> seen;
  for (const auto& code : analytes_) {
    if (!valid_code(code))
      throw ValidationError("panel: invalid analyte code '" + code +
                            "' (must be non-empty, no whitespace/comma/quote)");
    if (!seen.insert(code).second)
      throw ValidationError("panel: duplicate analyte code '" + code + "'");
  }
  for (const auto& unit : units_) {
    if (!valid_unit(unit)) throw ValidationError("panel: unit label contains control characters");
  }
}

AnalytePanel::AnalytePanel(std::vector<std::string> analytes)
    : AnalytePanel(std::move(analytes), {}) {}

std::optional<std::size_t> AnalytePanel::index_of(const std::string& code) const {
  for (std::size_t i = 0; i < analytes_.size(); ++i)
    if (analytes_[i] == code) return i;
  return std::nullopt;
}

AnalytePanel AnalytePanel::select(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> codes, units;
  codes.reserve(indices.size());
  units.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= analytes_.size()) throw ValidationError("panel: analyte index out of range");
    codes.push_back(analytes_[i]);
    units.push_back(units_[i]);
  }
  return AnalytePanel(std::move(codes), std::move(units));
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("sample: non-finite analyte value");
    if (v < 0.0) throw ValidationError("sample: negative analyte value");
  }
}

Cohort::Cohort(AnalytePanel panel, std::vector<Sample> samples)
    : panel_(std::move(panel)), samples_(std::move(samples)) {
  validate();
}

Cohort::Cohort(AnalytePanel panel, std::vector<Sample> samples, std::vector<double> volumes)
    : panel_(std::move(panel)), samples_(std::move(samples)), volumes_(std::move(volumes)) {
  validate();
}

void Cohort::validate() const {
  for (const auto& s : samples_) {
    if (s.size() != panel_.size())
      throw ValidationError("cohort: sample length does not match panel");
  }
  if (volumes_) {
    if (volumes_->size() != samples_.size())
      throw ValidationError("cohort: volume count does not match sample count");
    for (double v : *volumes_) {
      if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError("cohort: volumes must be finite and > 0");
    }
  }
}

const std::vector<double>& Cohort::volumes() const {
  if (!volumes_) throw ValidationError("cohort: volumes are not present");
  return *volumes_;
}

Cohort Cohort::select_analytes(const std::vector<std::size_t>& indices) const {
  AnalytePanel sub = panel_.select(indices);
  std::vector<Sample> rows;
  rows.reserve(samples_.size());
  for (const auto& s : samples_) {
    std::vector<double> vals;
    vals.reserve(indices.size());
    for (std::size_t i : indices) vals.push_back(s[i]);
    rows.emplace_back(std::move(vals));
  }
  if (volumes_) return Cohort(std::move(sub), std::move(rows), *volumes_);
  return Cohort(std::move(sub), std::move(rows));
}

Cohort Cohort::reorder_rows(const std::vector<std::size_t>& perm) const {
  if (perm.size() != samples_.size()) throw ValidationError("cohort: permutation length mismatch");
  std::vector<Sample> rows;
  rows.reserve(perm.size());
  std::vector<double> vols;
  std::vector<bool> seen(samples_.size(), false);
  for (std::size_t p : perm) {
    if (p >= samples_.size()) throw ValidationError("cohort: permutation index out of range");
    if (seen[p]) throw ValidationError("cohort: permutation repeats index " + std::to_string(p));
    seen[p] = true;
    rows.push_back(samples_[p]);
    if (volumes_) vols.push_back((*volumes_)[p]);
  }
  if (volumes_) return Cohort(panel_, std::move(rows), std::move(vols));
  return Cohort(panel_, std::move(rows));
}

}  // namespace volfit
