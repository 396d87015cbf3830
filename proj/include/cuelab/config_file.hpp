#pragma once

#include <map>
#include <string>

#include "cuelab/harness.hpp"

namespace cuelab {

/// Flat `key = value` text; blank lines and `#` comments are ignored. Keys
/// are the CLI long-flag names without dashes-prefix (e.g. `n-grid`).
std::map<std::string, std::string> parse_key_value(const std::string& text);

/// Applies recognized experiment keys (n-grid, replicates, seed, metrics,
/// moments, format, out, threads) to `cfg`. Keys listed in `passthrough`
/// are left for the caller; anything else is a ValidationError.
void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& settings,
                    const std::vector<std::string>& passthrough = {});

std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<Metric> parse_metric_list(const std::string& text);
OutputFormat parse_format(const std::string& text);

}  // namespace cuelab
