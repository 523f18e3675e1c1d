#include "volfit/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "volfit/errors.hpp"

namespace volfit::io {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ValidationError("error reading file: " + path);
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw ValidationError("error writing file: " + path);
}

CsvTable parse_csv(const std::string& text, const std::string& context) {
  std::string body = text;
  // Tolerate a UTF-8 byte order mark.
  if (body.size() >= 3 && body.compare(0, 3, "\xEF\xBB\xBF") == 0) body.erase(0, 3);

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t nl = body.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(body.substr(start));
      break;
    }
    lines.push_back(body.substr(start, nl - start));
    start = nl + 1;
  }
  // A final newline produces one empty trailing piece; drop it.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }

  if (lines.empty()) throw ValidationError(context + ": empty file");

  CsvTable table;
  table.header = split_fields(lines[0]);
  std::unordered_set<std::string> seen;
  for (const auto& name : table.header) {
    if (name.empty()) throw ValidationError(context + ":1: empty column name in header");
    if (!seen.insert(name).second)
      throw ValidationError(context + ":1: duplicate column name '" + name + "'");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line_no = std::to_string(i + 1);
    if (lines[i].empty())
      throw ValidationError(context + ":" + line_no + ": empty line");
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != table.header.size())
      throw ValidationError(context + ":" + line_no + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
  }
  return table;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_file(path), path); }

double parse_number(const std::string& field, const std::string& where) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ValidationError(where + ": not a valid number: '" + field + "'");
  if (!std::isfinite(value)) throw ValidationError(where + ": non-finite number: '" + field + "'");
  return value;
}

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Cohort cohort_from_table(const CsvTable& table, const std::string& context) {
  bool has_volume = false;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == "volume") {
      if (i + 1 != table.header.size())
        throw ValidationError(context + ":1: 'volume' must be the final column");
      has_volume = true;
    }
  }
  const std::size_t m = table.header.size() - (has_volume ? 1 : 0);
  if (m == 0) throw ValidationError(context + ":1: no analyte columns");

  std::vector<std::string> codes(table.header.begin(), table.header.begin() + m);
  AnalytePanel panel{std::move(codes)};

  std::vector<Sample> samples;
  std::vector<double> volumes;
  samples.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string line = std::to_string(r + 2);
    std::vector<double> values(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::string where =
          context + ":" + line + ", column '" + table.header[i] + "'";
      values[i] = parse_number(table.rows[r][i], where);
      if (values[i] < 0.0)
        throw ValidationError(where + ": analyte amount must be >= 0, got '" +
                              table.rows[r][i] + "'");
    }
    samples.emplace_back(std::move(values));
    if (has_volume) {
      const std::string where = context + ":" + line + ", column 'volume'";
      const double v = parse_number(table.rows[r][m], where);
      if (v <= 0.0)
        throw ValidationError(where + ": volume must be > 0, got '" + table.rows[r][m] + "'");
      volumes.push_back(v);
    }
  }
  if (has_volume) return Cohort(std::move(panel), std::move(samples), std::move(volumes));
  return Cohort(std::move(panel), std::move(samples));
}

Cohort read_cohort_csv(const std::string& path) {
  return cohort_from_table(read_csv(path), path);
}

std::string cohort_to_csv(const Cohort& cohort) {
  std::string out;
  const auto& panel = cohort.panel();
  for (std::size_t i = 0; i < panel.size(); ++i) {
    if (i) out += ',';
    out += panel.analyte(i);
  }
  if (cohort.has_volumes()) out += ",volume";
  out += '\n';
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    const auto& values = cohort.sample(s).values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += format_g17(values[i]);
    }
    if (cohort.has_volumes()) {
      out += ',';
      out += format_g17(cohort.volume(s));
    }
    out += '\n';
  }
  return out;
}

void write_cohort_csv(const std::string& path, const Cohort& cohort) {
  write_file(path, cohort_to_csv(cohort));
}

}  // namespace volfit::io
