#include "cuelab/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "cuelab/errors.hpp"

namespace cuelab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

std::map<std::string, std::string> parse_key_value(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    while (key.starts_with('-')) {
      key.erase(0, 1);
    }
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    out[key] = value;
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) {
    out.push_back(parse_number<std::size_t>(item, "integer"));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    out.push_back(parse_number<double>(item, "number"));
  }
  return out;
}

std::vector<Metric> parse_metric_list(const std::string& text) {
  std::vector<Metric> out;
  for (const auto& item : split_list(text)) {
    const auto m = parse_metric(item);
    if (!m) {
      throw ValidationError("unknown metric '" + item + "'");
    }
    out.push_back(*m);
  }
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") {
    return OutputFormat::kCsv;
  }
  if (text == "json") {
    return OutputFormat::kJson;
  }
  throw ValidationError("format must be csv or json, got '" + text + "'");
}

void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& settings,
                    const std::vector<std::string>& passthrough) {
  for (const auto& [key, value] : settings) {
    if (key == "n-grid") {
      cfg.n_grid = parse_size_list(value);
    } else if (key == "replicates") {
      cfg.replicates = parse_number<std::size_t>(value, "replicate count");
    } else if (key == "seed") {
      cfg.master_seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "metrics") {
      cfg.metrics_selected = parse_metric_list(value);
    } else if (key == "moments") {
      cfg.moment_orders = parse_double_list(value);
    } else if (key == "format") {
      cfg.output_format = parse_format(value);
    } else if (key == "out") {
      cfg.output_path = value;
    } else if (key == "threads") {
      cfg.threads = parse_number<std::size_t>(value, "thread count");
    } else if (std::find(passthrough.begin(), passthrough.end(), key) == passthrough.end()) {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace cuelab
