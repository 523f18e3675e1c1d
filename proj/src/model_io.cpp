#include "volfit/model_io.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

#include "volfit/csv.hpp"
#include "volfit/errors.hpp"

namespace volfit::io {
namespace {

// File layout (one token of lookahead, line oriented):
//   volfit-model
//   format_version 1
//   panel <m>
//   <code> [unit]            x m
//   alpha_linear <m>
//   <coefficient>            x m
//   alpha_quadratic <m(m+1)/2>
//   <coefficient>            x m(m+1)/2
//   fit_meta ridge <value>
//   fit_meta rank_tolerance <value>
//   fit_meta solver_mode <name>
//   fit_meta solver_path <name>
//   fit_meta train_n <count>
//   end

class LineReader {
 public:
  LineReader(const std::string& text, std::string context)
      : text_(text), context_(std::move(context)) {}

  std::string next() {
    if (pos_ > text_.size()) fail_at(line_no_ + 1, "unexpected end of file");
    const std::size_t nl = text_.find('\n', pos_);
    std::string line;
    if (nl == std::string::npos) {
      line = text_.substr(pos_);
      pos_ = text_.size() + 1;
      if (line.empty()) fail_at(line_no_ + 1, "unexpected end of file");
    } else {
      line = text_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no_;
    return line;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  // Cites the line most recently handed out by next().
  [[noreturn]] void fail(const std::string& message) const {
    fail_at(line_no_ == 0 ? 1 : line_no_, message);
  }

  [[noreturn]] void fail_at(std::size_t line, const std::string& message) const {
    throw ValidationError(context_ + ":" + std::to_string(line) + ": " + message);
  }

 private:
  const std::string& text_;
  std::string context_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

void expect(LineReader& reader, const std::string& literal) {
  const std::string line = reader.next();
  if (line != literal) reader.fail("expected '" + literal + "', got '" + line + "'");
}

std::uint64_t expect_count(LineReader& reader, const std::string& key) {
  const std::string line = reader.next();
  const std::string prefix = key + " ";
  if (line.rfind(prefix, 0) != 0) reader.fail("expected '" + key + " <count>', got '" + line + "'");
  const std::string value = line.substr(prefix.size());
  std::uint64_t count = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), count);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    reader.fail("invalid count in '" + line + "'");
  return count;
}

std::string expect_value(LineReader& reader, const std::string& key) {
  const std::string line = reader.next();
  const std::string prefix = key + " ";
  if (line.rfind(prefix, 0) != 0) reader.fail("expected '" + key + " <value>', got '" + line + "'");
  return line.substr(prefix.size());
}

double parse_coefficient(LineReader& reader) {
  const std::string line = reader.next();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
  if (ec != std::errc{} || ptr != line.data() + line.size())
    reader.fail("invalid coefficient '" + line + "'");
  return value;
}

}  // namespace

std::string model_to_string(const VolumeModel& model) {
  std::string out;
  out += "volfit-model\n";
  out += "format_version " + std::to_string(kModelFormatVersion) + "\n";
  out += "panel " + std::to_string(model.m()) + "\n";
  const auto& panel = model.panel();
  for (std::size_t i = 0; i < panel.size(); ++i) {
    out += panel.analyte(i);
    if (!panel.unit(i).empty()) out += " " + panel.unit(i);
    out += '\n';
  }
  out += "alpha_linear " + std::to_string(model.alpha_linear().size()) + "\n";
  for (double c : model.alpha_linear()) out += format_g17(c) + "\n";
  out += "alpha_quadratic " + std::to_string(model.alpha_quadratic().size()) + "\n";
  for (double c : model.alpha_quadratic()) out += format_g17(c) + "\n";
  const FitMeta& meta = model.meta();
  out += "fit_meta ridge " + format_g17(meta.ridge) + "\n";
  out += "fit_meta rank_tolerance " + format_g17(meta.rank_tolerance) + "\n";
  out += "fit_meta solver_mode " + meta.solver_mode + "\n";
  out += "fit_meta solver_path " + meta.solver_path + "\n";
  out += "fit_meta train_n " + std::to_string(meta.train_n) + "\n";
  out += "end\n";
  return out;
}

VolumeModel model_from_string(const std::string& text, const std::string& context) {
  LineReader reader(text, context);
  expect(reader, "volfit-model");

  const std::string version = expect_value(reader, "format_version");
  if (version != std::to_string(kModelFormatVersion))
    reader.fail("unsupported format_version '" + version + "' (expected " +
                std::to_string(kModelFormatVersion) + ")");

  const std::uint64_t m = expect_count(reader, "panel");
  if (m == 0) reader.fail("panel must contain at least one analyte");
  std::vector<std::string> codes(m), units(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::string line = reader.next();
    const std::size_t space = line.find(' ');
    if (space == std::string::npos) {
      codes[i] = line;
    } else {
      codes[i] = line.substr(0, space);
      units[i] = line.substr(space + 1);
    }
  }

  const std::uint64_t n_lin = expect_count(reader, "alpha_linear");
  if (n_lin != m) reader.fail("alpha_linear count does not match panel size");
  std::vector<double> lin(n_lin);
  for (auto& c : lin) c = parse_coefficient(reader);

  const std::uint64_t n_quad = expect_count(reader, "alpha_quadratic");
  if (n_quad != m * (m + 1) / 2) reader.fail("alpha_quadratic count does not match panel size");
  std::vector<double> quad(n_quad);
  for (auto& c : quad) c = parse_coefficient(reader);

  FitMeta meta;
  meta.ridge = parse_number(expect_value(reader, "fit_meta ridge"), context + ": fit_meta ridge");
  meta.rank_tolerance = parse_number(expect_value(reader, "fit_meta rank_tolerance"),
                                     context + ": fit_meta rank_tolerance");
  meta.solver_mode = expect_value(reader, "fit_meta solver_mode");
  meta.solver_path = expect_value(reader, "fit_meta solver_path");
  {
    const std::string value = expect_value(reader, "fit_meta train_n");
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), meta.train_n);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      reader.fail("invalid train_n '" + value + "'");
  }
  expect(reader, "end");
  if (!reader.at_end()) reader.fail("trailing content after 'end'");

  try {
    return VolumeModel(AnalytePanel(std::move(codes), std::move(units)), std::move(lin),
                       std::move(quad), std::move(meta));
  } catch (const ValidationError& e) {
    throw ValidationError(context + ": " + e.what());
  }
}

void save_model(const std::string& path, const VolumeModel& model) {
  write_file(path, model_to_string(model));
}

VolumeModel load_model(const std::string& path) {
  return model_from_string(read_file(path), path);
}

}  // namespace volfit::io
