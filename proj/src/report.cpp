#include "cuelab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "cuelab/errors.hpp"

namespace cuelab {

namespace {

using Json = nlohmann::ordered_json;

std::string order_tag(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

struct Column {
  std::string name;
  double value;
};

std::vector<std::string> table_header(const RateTable& t) {
  std::vector<std::string> h{"N", "replicates"};
  for (Metric m : t.metrics) {
    h.push_back(std::string(metric_name(m)) + "_mean");
    h.push_back(std::string(metric_name(m)) + "_se");
  }
  const bool has_dk = std::find(t.metrics.begin(), t.metrics.end(), Metric::kKolmogorov) != t.metrics.end();
  if (has_dk) {
    for (double p : t.moment_orders) {
      h.push_back("d_k_scaled_p" + order_tag(p));
      h.push_back("d_k_dev_p" + order_tag(p));
    }
  }
  if (std::find(t.metrics.begin(), t.metrics.end(), Metric::kMaxGap) != t.metrics.end()) {
    h.push_back("gap_stat");
  }
  return h;
}

std::vector<Column> row_columns(const RateRow& row) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Column> c{{"N", static_cast<double>(row.n)},
                        {"replicates", static_cast<double>(row.replicates)}};
  for (const auto& [m, s] : row.summaries) {
    c.push_back({std::string(metric_name(m)) + "_mean", s.mean});
    c.push_back({std::string(metric_name(m)) + "_se", s.standard_error});
  }
  for (const auto& mom : row.moments) {
    c.push_back({"d_k_scaled_p" + order_tag(mom.order), mom.scaled});
    c.push_back({"d_k_dev_p" + order_tag(mom.order), mom.deviation});
  }
  if (row.find(Metric::kMaxGap) != nullptr) {
    c.push_back({"gap_stat", row.gap_stat.value_or(nan)});
  }
  return c;
}

std::vector<Column> diagnostics_columns(const DiagnosticsRow& row) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Column> c{{"N", static_cast<double>(row.n)},
                        {"ratio_dk", row.ratio_dk.value_or(nan)},
                        {"ratio_w1", row.ratio_w1.value_or(nan)},
                        {"gap_stat", row.gap_stat.value_or(nan)}};
  for (const auto& mom : row.moments) {
    c.push_back({"d_k_scaled_p" + order_tag(mom.order), mom.scaled});
    c.push_back({"d_k_dev_p" + order_tag(mom.order), mom.deviation});
  }
  return c;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += (i ? "," : "") + names[i];
  }
  return out + "\n";
}

std::string join_values(const std::vector<Column>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out += (i ? "," : "") + format_number(cols[i].value);
  }
  return out + "\n";
}

Json rounded(double v) {
  if (!std::isfinite(v)) {
    return nullptr;
  }
  return std::strtod(format_number(v).c_str(), nullptr);
}

Json columns_json(const std::vector<Column>& cols) {
  Json obj = Json::object();
  for (const auto& c : cols) {
    if (c.name == "N" || c.name == "replicates") {
      obj[c.name] = static_cast<std::uint64_t>(c.value);
    } else {
      obj[c.name] = rounded(c.value);
    }
  }
  return obj;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) {
    out.push_back(cur);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string rate_table_csv(const RateTable& t) {
  std::string out = join_names(table_header(t));
  if (t.metrics.empty()) {
    return out;
  }
  for (const auto& row : t.rows) {
    out += join_values(row_columns(row));
  }
  return out;
}

std::string rate_table_json(const RateTable& t) {
  Json doc = Json::object();
  doc["metrics"] = Json::array();
  for (Metric m : t.metrics) {
    doc["metrics"].push_back(metric_name(m));
  }
  doc["moment_orders"] = t.moment_orders;
  doc["columns"] = table_header(t);
  doc["rows"] = Json::array();
  if (!t.metrics.empty()) {
    for (const auto& row : t.rows) {
      doc["rows"].push_back(columns_json(row_columns(row)));
    }
  }
  return doc.dump(2) + "\n";
}

std::string diagnostics_csv(const RateDiagnostics& d) {
  std::vector<std::string> header{"N", "ratio_dk", "ratio_w1", "gap_stat"};
  if (!d.rows.empty()) {
    for (const auto& mom : d.rows.front().moments) {
      header.push_back("d_k_scaled_p" + order_tag(mom.order));
      header.push_back("d_k_dev_p" + order_tag(mom.order));
    }
  }
  std::string out = join_names(header);
  for (const auto& row : d.rows) {
    out += join_values(diagnostics_columns(row));
  }
  return out;
}

std::string diagnostics_json(const RateDiagnostics& d) {
  Json doc = Json::object();
  doc["reference_dk_limit"] = rounded(std::numbers::inv_pi);
  doc["rows"] = Json::array();
  for (const auto& row : d.rows) {
    doc["rows"].push_back(columns_json(diagnostics_columns(row)));
  }
  return doc.dump(2) + "\n";
}

std::string ratio_chart_svg(const RateDiagnostics& d) {
  constexpr double width = 640.0, height = 400.0, margin = 56.0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : d.rows) {
    if (row.ratio_dk && std::isfinite(*row.ratio_dk)) {
      pts.emplace_back(std::log2(static_cast<double>(row.n)), *row.ratio_dk);
    }
  }
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (!pts.empty()) {
    x_lo = x_hi = pts.front().first;
    y_hi = std::numbers::inv_pi;
    for (const auto& [x, y] : pts) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_hi = std::max(y_hi, y);
    }
    if (x_hi == x_lo) {
      x_lo -= 0.5;
      x_hi += 0.5;
    }
    y_hi *= 1.15;
  }
  auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
    << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
    << height - margin << "\" stroke=\"black\"/>\n";
  const double ref = sy(std::numbers::inv_pi);
  s << "<line x1=\"" << margin << "\" y1=\"" << ref << "\" x2=\"" << width - margin << "\" y2=\""
    << ref << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  s << "<text x=\"" << width - margin << "\" y=\"" << ref - 6
    << "\" text-anchor=\"end\" font-size=\"12\">1/pi</text>\n";
  if (!pts.empty()) {
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) {
      s << sx(x) << ',' << sy(y) << ' ';
    }
    s << "\"/>\n";
    for (const auto& [x, y] : pts) {
      s << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
      s << "<text x=\"" << sx(x) << "\" y=\"" << height - margin + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(x) << "</text>\n";
    }
  }
  s << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
    << "\" text-anchor=\"middle\" font-size=\"13\">log2 N</text>\n";
  s << "<text x=\"16\" y=\"" << height / 2 << "\" font-size=\"13\" transform=\"rotate(-90 16 "
    << height / 2 << ")\" text-anchor=\"middle\">N mean(d_K) / log N</text>\n";
  s << "</svg>\n";
  return s.str();
}

RateTable parse_rate_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("empty rate table");
  }
  const auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "N" || header[1] != "replicates") {
    throw ValidationError("rate table header must start with N,replicates");
  }
  RateTable t;
  for (std::size_t i = 2; i < header.size(); ++i) {
    const std::string& h = header[i];
    if (h.size() > 5 && h.ends_with("_mean")) {
      if (auto m = parse_metric(h.substr(0, h.size() - 5))) {
        t.metrics.push_back(*m);
      }
    } else if (h.starts_with("d_k_scaled_p")) {
      t.moment_orders.push_back(std::strtod(h.c_str() + 12, nullptr));
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw ValidationError("rate table row has " + std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
    }
    std::vector<double> v(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      v[i] = std::strtod(cells[i].c_str(), nullptr);
    }
    RateRow row;
    row.n = static_cast<std::size_t>(v[0]);
    row.replicates = static_cast<std::size_t>(v[1]);
    std::size_t col = 2;
    for (Metric m : t.metrics) {
      row.summaries.emplace_back(m, MetricSummary{v[col], v[col + 1]});
      col += 2;
    }
    if (std::find(t.metrics.begin(), t.metrics.end(), Metric::kKolmogorov) != t.metrics.end()) {
      for (double p : t.moment_orders) {
        row.moments.push_back({p, v[col], v[col + 1]});
        col += 2;
      }
    }
    if (col < v.size() && header[col] == "gap_stat") {
      row.gap_stat = v[col];
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << contents;
  out.flush();
  if (!out) {
    throw IoError("failed writing '" + path + "'");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const RateTable& t, OutputFormat format, const std::string& path) {
  write_text_file(path, format == OutputFormat::kCsv ? rate_table_csv(t) : rate_table_json(t));
}

void emit(const RateDiagnostics& d, OutputFormat format, const std::string& path) {
  write_text_file(path, format == OutputFormat::kCsv ? diagnostics_csv(d) : diagnostics_json(d));
}

}  // namespace cuelab
