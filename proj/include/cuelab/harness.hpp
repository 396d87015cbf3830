#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuelab/metrics.hpp"

namespace cuelab {

enum class Metric { kKolmogorov, kW1, kMaxGap, kGridSup };

inline constexpr Metric kAllMetrics[] = {Metric::kKolmogorov, Metric::kW1, Metric::kMaxGap,
                                         Metric::kGridSup};

/// Column stem: "d_k", "w1", "max_gap", "grid_sup".
const char* metric_name(Metric m);
std::optional<Metric> parse_metric(const std::string& name);

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::vector<Metric> metrics_selected{kAllMetrics, kAllMetrics + 4};
  std::vector<double> moment_orders{1.0, 2.0};
  OutputFormat output_format = OutputFormat::kCsv;
  std::string output_path;
  /// Worker threads for replicate fan-out; 0 means hardware concurrency.
  std::size_t threads = 0;

  /// Throws ValidationError on an empty grid, N < 1, replicates < 1 or a
  /// non-positive moment order.
  void validate() const;
  bool selects(Metric m) const;
};

struct MetricSummary {
  double mean = 0.0;
  double standard_error = 0.0;  // sample sd / sqrt(M); NaN when M < 2
};

struct MomentEstimate {
  double order = 0.0;
  double scaled = 0.0;     // mean of ((N / log N) d_K)^p
  double deviation = 0.0;  // mean of |(N / log N) d_K - 1/pi|^p
};

struct RateRow {
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::vector<std::pair<Metric, MetricSummary>> summaries;  // in selection order
  std::vector<MomentEstimate> moments;                      // empty unless d_K selected
  std::optional<double> gap_stat;                           // N mean(T) / sqrt(32 log N)

  const MetricSummary* find(Metric m) const;
};

struct RateTable {
  std::vector<Metric> metrics;  // canonical order
  std::vector<double> moment_orders;
  std::vector<RateRow> rows;
};

/// Per-replicate metrics for one N; element r comes from replicate r's own
/// stream, so it does not depend on thread count or on the other replicates.
std::vector<DistanceReport> simulate_reports(std::size_t n, std::size_t replicates,
                                             std::uint64_t master_seed, std::size_t threads = 0);

/// Replicate stream for (seed, N, r). The grid value is folded into the key
/// so that different N never share random numbers.
CounterStream replicate_stream(std::uint64_t master_seed, std::size_t n, std::uint64_t replicate);

/// Aggregates per-replicate metrics into one row.
RateRow aggregate_row(std::size_t n, const std::vector<DistanceReport>& reports,
                      const std::vector<Metric>& metrics, const std::vector<double>& moment_orders);

RateTable run_experiment(const ExperimentConfig& cfg);

struct DiagnosticsRow {
  std::size_t n = 0;
  std::optional<double> ratio_dk;  // N mean(d_K) / log N
  std::optional<double> ratio_w1;  // N mean(W1) / sqrt(log N)
  std::optional<double> gap_stat;
  std::vector<MomentEstimate> moments;
};

struct RateDiagnostics {
  std::vector<DiagnosticsRow> rows;  // N = 1 excluded
};

/// Normalized rate statistics; requires at least two rows.
RateDiagnostics rate_diagnostics(const RateTable& t);

/// Summation by recursive halving; order-fixed for a given input.
double pairwise_sum(const double* values, std::size_t count);
MetricSummary summarize(const std::vector<double>& values);

}  // namespace cuelab
