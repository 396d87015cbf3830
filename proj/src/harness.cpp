#include "cuelab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "cuelab/errors.hpp"

namespace cuelab {

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kKolmogorov:
      return "d_k";
    case Metric::kW1:
      return "w1";
    case Metric::kMaxGap:
      return "max_gap";
    case Metric::kGridSup:
      return "grid_sup";
  }
  return "?";
}

std::optional<Metric> parse_metric(const std::string& name) {
  for (Metric m : kAllMetrics) {
    if (name == metric_name(m)) {
      return m;
    }
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) {
    throw ValidationError("n_grid must not be empty");
  }
  for (std::size_t n : n_grid) {
    if (n < 1) {
      throw ValidationError("every N in n_grid must be at least 1");
    }
  }
  if (replicates < 1) {
    throw ValidationError("replicates must be at least 1");
  }
  for (double p : moment_orders) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ValidationError("moment orders must be finite and positive");
    }
  }
}

bool ExperimentConfig::selects(Metric m) const {
  return std::find(metrics_selected.begin(), metrics_selected.end(), m) != metrics_selected.end();
}

const MetricSummary* RateRow::find(Metric m) const {
  for (const auto& [metric, summary] : summaries) {
    if (metric == m) {
      return &summary;
    }
  }
  return nullptr;
}

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      s += values[i];
    }
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  const std::size_t m = values.size();
  if (m == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.standard_error = s.mean;
    return s;
  }
  s.mean = pairwise_sum(values.data(), m) / static_cast<double>(m);
  if (m < 2) {
    s.standard_error = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = values[i] - s.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq.data(), m) / static_cast<double>(m - 1);
  s.standard_error = std::sqrt(var / static_cast<double>(m));
  return s;
}

CounterStream replicate_stream(std::uint64_t master_seed, std::size_t n, std::uint64_t replicate) {
  return CounterStream(master_seed, replicate, static_cast<std::uint64_t>(n));
}

std::vector<DistanceReport> simulate_reports(std::size_t n, std::size_t replicates,
                                             std::uint64_t master_seed, std::size_t threads) {
  const KernelConfig cfg = KernelConfig::make(n);
  std::vector<DistanceReport> reports(replicates);
  std::size_t workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, replicates);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      DppSampler sampler(cfg);
      for (std::size_t r = next.fetch_add(1); r < replicates; r = next.fetch_add(1)) {
        CounterStream stream = replicate_stream(master_seed, n, r);
        reports[r] = distance_report(sampler.sample(stream).sample);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next.store(replicates);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return reports;
}

namespace {

double metric_of(const DistanceReport& r, Metric m) {
  switch (m) {
    case Metric::kKolmogorov:
      return r.d_k;
    case Metric::kW1:
      return r.w1;
    case Metric::kMaxGap:
      return r.max_gap;
    case Metric::kGridSup:
      return r.grid_sup;
  }
  return 0.0;
}

std::vector<Metric> canonical(const std::vector<Metric>& selected) {
  std::vector<Metric> out;
  for (Metric m : kAllMetrics) {
    if (std::find(selected.begin(), selected.end(), m) != selected.end()) {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

RateRow aggregate_row(std::size_t n, const std::vector<DistanceReport>& reports,
                      const std::vector<Metric>& metrics, const std::vector<double>& moment_orders) {
  RateRow row;
  row.n = n;
  row.replicates = reports.size();
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  std::vector<double> values(reports.size());
  for (Metric m : canonical(metrics)) {
    for (std::size_t r = 0; r < reports.size(); ++r) {
      values[r] = metric_of(reports[r], m);
    }
    const MetricSummary summary = summarize(values);
    row.summaries.emplace_back(m, summary);

    if (m == Metric::kKolmogorov) {
      for (double p : moment_orders) {
        MomentEstimate est{p, nan, nan};
        if (n > 1 && !reports.empty()) {
          std::vector<double> scaled(reports.size()), deviation(reports.size());
          for (std::size_t r = 0; r < reports.size(); ++r) {
            const double z = nd / log_n * reports[r].d_k;
            scaled[r] = std::pow(z, p);
            deviation[r] = std::pow(std::abs(z - std::numbers::inv_pi), p);
          }
          est.scaled = pairwise_sum(scaled.data(), scaled.size()) / static_cast<double>(scaled.size());
          est.deviation =
              pairwise_sum(deviation.data(), deviation.size()) / static_cast<double>(deviation.size());
        }
        row.moments.push_back(est);
      }
    }
    if (m == Metric::kMaxGap) {
      row.gap_stat = n > 1 ? nd * summary.mean / std::sqrt(32.0 * log_n) : nan;
    }
  }
  return row;
}

RateTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RateTable table;
  table.metrics = canonical(cfg.metrics_selected);
  table.moment_orders = cfg.moment_orders;
  for (std::size_t n : cfg.n_grid) {
    const auto reports = simulate_reports(n, cfg.replicates, cfg.master_seed, cfg.threads);
    table.rows.push_back(aggregate_row(n, reports, table.metrics, cfg.moment_orders));
  }
  return table;
}

RateDiagnostics rate_diagnostics(const RateTable& t) {
  if (t.rows.size() < 2) {
    throw ValidationError("rate diagnostics need at least two rows");
  }
  RateDiagnostics d;
  for (const RateRow& row : t.rows) {
    if (row.n <= 1) {
      continue;
    }
    const double nd = static_cast<double>(row.n);
    const double log_n = std::log(nd);
    DiagnosticsRow out;
    out.n = row.n;
    if (const auto* s = row.find(Metric::kKolmogorov)) {
      out.ratio_dk = nd * s->mean / log_n;
    }
    if (const auto* s = row.find(Metric::kW1)) {
      out.ratio_w1 = nd * s->mean / std::sqrt(log_n);
    }
    out.gap_stat = row.gap_stat;
    out.moments = row.moments;
    d.rows.push_back(std::move(out));
  }
  return d;
}

}  // namespace cuelab
