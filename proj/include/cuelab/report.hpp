#pragma once

#include <string>

#include "cuelab/harness.hpp"

namespace cuelab {

/// Decimal rendering with 12 significant digits ("nan" for missing values).
std::string format_number(double v);

std::string rate_table_csv(const RateTable& t);
std::string rate_table_json(const RateTable& t);
std::string diagnostics_csv(const RateDiagnostics& d);
std::string diagnostics_json(const RateDiagnostics& d);

/// Line chart of N mean(d_K)/log N against log2 N with a reference line at 1/pi.
std::string ratio_chart_svg(const RateDiagnostics& d);

/// Parses a CSV produced by rate_table_csv.
RateTable parse_rate_table_csv(const std::string& text);

/// Writes `contents` to `path`; IoError names the path on failure.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

void emit(const RateTable& t, OutputFormat format, const std::string& path);
void emit(const RateDiagnostics& d, OutputFormat format, const std::string& path);

}  // namespace cuelab
