#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "volfit/panel.hpp"

namespace volfit::io {

// Plain CSV: UTF-8, comma separator, '.' decimal point, no quoting or
// escapes. LF and CRLF are both accepted on read; writes are always LF.
struct CsvTable {
  std::vector<std::string> header;              // line 1
  std::vector<std::vector<std::string>> rows;   // data row r is file line r + 2
};

CsvTable parse_csv(const std::string& text, const std::string& context);
CsvTable read_csv(const std::string& path);

// Strict finite double, entire field consumed. `where` prefixes diagnostics
// (e.g. "file.csv:7, column 'TP'").
double parse_number(const std::string& field, const std::string& where);

// 17 significant digits: enough to round-trip any binary64 exactly.
std::string format_g17(double value);

// Cohort file: header holds analyte codes with an optional final "volume"
// column. Analyte fields must be finite and >= 0, volumes finite and > 0.
// Diagnostics carry <context>:<line>.
Cohort cohort_from_table(const CsvTable& table, const std::string& context);
Cohort read_cohort_csv(const std::string& path);

std::string cohort_to_csv(const Cohort& cohort);
void write_cohort_csv(const std::string& path, const Cohort& cohort);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace volfit::io
