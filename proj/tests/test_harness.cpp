#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "json.hpp"

#include "cuelab/config_file.hpp"
#include "cuelab/errors.hpp"
#include "cuelab/harness.hpp"
#include "cuelab/report.hpp"

using namespace cuelab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_grid = {2, 5, 9};
  cfg.replicates = 40;
  cfg.master_seed = 2718;
  cfg.moment_orders = {1, 2, 0.5};
  cfg.threads = 1;
  return cfg;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cuelab_test_" + name);
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.n_grid = {0};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.n_grid = {4};
  cfg.replicates = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.replicates = 1;
  cfg.moment_orders = {-1};
  CHECK_THROWS_AS(run_experiment(cfg), ValidationError);
}

TEST_CASE("N = 1: mean d_K is 3/4") {
  ExperimentConfig cfg;
  cfg.n_grid = {1};
  cfg.replicates = 20000;
  cfg.master_seed = 4;
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 1);
  const auto* dk = table.rows[0].find(Metric::kKolmogorov);
  REQUIRE(dk != nullptr);
  CHECK(std::abs(dk->mean - 0.75) < 4 * dk->standard_error);
  // log 1 = 0: normalized statistics are undefined
  CHECK(std::isnan(table.rows[0].moments[0].scaled));
  CHECK(std::isnan(*table.rows[0].gap_stat));
}

TEST_CASE("results do not depend on thread count or on other replicates") {
  auto cfg = small_config();
  const std::string one = rate_table_csv(run_experiment(cfg));
  cfg.threads = 3;
  const std::string three = rate_table_csv(run_experiment(cfg));
  CHECK(one == three);

  const auto many = simulate_reports(7, 12, 99, 2);
  const auto few = simulate_reports(7, 5, 99, 1);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(many[r].d_k == few[r].d_k);
    CHECK(many[r].w1 == few[r].w1);
  }
}

TEST_CASE("aggregation matches a direct recomputation") {
  const auto reports = simulate_reports(6, 100, 77, 1);
  const auto row = aggregate_row(6, reports, {kAllMetrics, kAllMetrics + 4}, {1.0, 3.0});
  double sum = 0;
  for (const auto& r : reports) sum += r.w1;
  const double mean = sum / 100;
  double ss = 0;
  for (const auto& r : reports) ss += (r.w1 - mean) * (r.w1 - mean);
  const double se = std::sqrt(ss / 99) / 10;
  CHECK(std::abs(row.find(Metric::kW1)->mean - mean) < 1e-12);
  CHECK(std::abs(row.find(Metric::kW1)->standard_error - se) < 1e-12);

  double m3 = 0;
  const double scale = 6 / std::log(6.0);
  for (const auto& r : reports) m3 += std::pow(scale * r.d_k, 3.0);
  CHECK(std::abs(row.moments[1].scaled - m3 / 100) < 1e-12);
  double gaps = 0;
  for (const auto& r : reports) gaps += r.max_gap;
  CHECK(std::abs(*row.gap_stat - 6 * (gaps / 100) / std::sqrt(32 * std::log(6.0))) < 1e-12);
}

TEST_CASE("pairwise summation") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v.data(), v.size()) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(v.data(), 0) == 0.0);
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == 2.5);
  CHECK(s.standard_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(std::isnan(summarize({1.0}).standard_error));
}

TEST_CASE("rate_diagnostics") {
  auto cfg = small_config();
  cfg.n_grid = {1, 4, 8};
  const auto table = run_experiment(cfg);
  const auto d = rate_diagnostics(table);
  REQUIRE(d.rows.size() == 2);
  CHECK(d.rows[0].n == 4);
  const double expected = 4 * table.rows[1].find(Metric::kKolmogorov)->mean / std::log(4.0);
  CHECK(*d.rows[0].ratio_dk == doctest::Approx(expected));
  const double expected_w1 = 8 * table.rows[2].find(Metric::kW1)->mean / std::sqrt(std::log(8.0));
  CHECK(*d.rows[1].ratio_w1 == doctest::Approx(expected_w1));

  RateTable single = table;
  single.rows.resize(1);
  CHECK_THROWS_AS(rate_diagnostics(single), ValidationError);
}

TEST_CASE("CSV emission") {
  SUBCASE("empty metric selection gives a header-only file") {
    auto cfg = small_config();
    cfg.metrics_selected.clear();
    const std::string csv = rate_table_csv(run_experiment(cfg));
    CHECK(csv == "N,replicates\n");
  }
  SUBCASE("single-row table") {
    auto cfg = small_config();
    cfg.n_grid = {5};
    cfg.metrics_selected = {Metric::kW1, Metric::kKolmogorov};
    const std::string csv = rate_table_csv(run_experiment(cfg));
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 2);
    CHECK(csv.rfind("N,replicates,d_k_mean,d_k_se,w1_mean,w1_se,d_k_scaled_p1,d_k_dev_p1,", 0) == 0);
    CHECK(csv.find("ratio") == std::string::npos);
  }
  SUBCASE("round trip through the parser") {
    const auto table = run_experiment(small_config());
    const auto parsed = parse_rate_table_csv(rate_table_csv(table));
    REQUIRE(parsed.rows.size() == table.rows.size());
    CHECK(parsed.metrics == table.metrics);
    CHECK(parsed.moment_orders == table.moment_orders);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto& a = table.rows[i];
      const auto& b = parsed.rows[i];
      CHECK(a.n == b.n);
      CHECK(a.replicates == b.replicates);
      for (Metric m : kAllMetrics) {
        CHECK(b.find(m)->mean == doctest::Approx(a.find(m)->mean).epsilon(1e-11));
        CHECK(b.find(m)->standard_error == doctest::Approx(a.find(m)->standard_error).epsilon(1e-11));
      }
      for (std::size_t k = 0; k < a.moments.size(); ++k) {
        CHECK(b.moments[k].order == a.moments[k].order);
        CHECK(b.moments[k].scaled == doctest::Approx(a.moments[k].scaled).epsilon(1e-11));
        CHECK(b.moments[k].deviation == doctest::Approx(a.moments[k].deviation).epsilon(1e-11));
      }
      CHECK(*b.gap_stat == doctest::Approx(*a.gap_stat).epsilon(1e-11));
    }
    // re-rendering the parsed table reproduces the bytes
    CHECK(rate_table_csv(parsed) == rate_table_csv(table));
  }
  SUBCASE("twelve significant digits") {
    CHECK(format_number(std::numbers::pi) == "3.14159265359");
    CHECK(format_number(std::nan("")) == "nan");
  }
}

TEST_CASE("JSON and SVG emission") {
  const auto table = run_experiment(small_config());
  const auto doc = nlohmann::json::parse(rate_table_json(table));
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["N"] == 2);
  CHECK(doc["rows"][1].contains("gap_stat"));
  CHECK(doc["metrics"][0] == "d_k");

  const auto diag = rate_diagnostics(table);
  const auto ddoc = nlohmann::json::parse(diagnostics_json(diag));
  CHECK(ddoc["rows"].size() == 3);
  const std::string svg = ratio_chart_svg(diag);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("1/pi") != std::string::npos);
}

TEST_CASE("file output and I/O errors") {
  const auto table = run_experiment(small_config());
  const auto path = temp_path("table.csv");
  emit(table, OutputFormat::kCsv, path.string());
  CHECK(read_text_file(path.string()) == rate_table_csv(table));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit(table, OutputFormat::kJson, "/nonexistent-dir/x/table.json"), IoError);
  try {
    write_text_file("/nonexistent-dir/out.csv", "x");
  } catch (const IoError& err) {
    CHECK(std::string(err.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
  }
}

TEST_CASE("flat config files") {
  const auto kv = parse_key_value("# comment\n n-grid = 4, 8 \n\n--seed=9\nformat = \"json\" # trailing\n");
  CHECK(kv.size() == 3);
  CHECK(kv.at("n-grid") == "4, 8");
  CHECK(kv.at("seed") == "9");
  CHECK(kv.at("format") == "json");
  CHECK_THROWS_AS(parse_key_value("n-grid 4\n"), ValidationError);

  ExperimentConfig cfg;
  apply_settings(cfg, kv);
  CHECK(cfg.n_grid == std::vector<std::size_t>{4, 8});
  CHECK(cfg.master_seed == 9);
  CHECK(cfg.output_format == OutputFormat::kJson);

  apply_settings(cfg, parse_key_value("metrics = w1,d_k\nmoments = 0.5,3\nreplicates=7\nthreads=2"));
  CHECK(cfg.metrics_selected == std::vector<Metric>{Metric::kW1, Metric::kKolmogorov});
  CHECK(cfg.moment_orders == std::vector<double>{0.5, 3.0});
  CHECK(cfg.replicates == 7);
  CHECK(cfg.threads == 2);

  CHECK_THROWS_AS(apply_settings(cfg, {{"svg", "x.svg"}}), ValidationError);
  CHECK_NOTHROW(apply_settings(cfg, {{"svg", "x.svg"}}, {"svg"}));
  CHECK_THROWS_AS(apply_settings(cfg, {{"replicates", "ten"}}), ValidationError);
  CHECK_THROWS_AS(apply_settings(cfg, {{"n-grid", "4,-2"}}), ValidationError);
  CHECK_THROWS_AS(apply_settings(cfg, {{"metrics", "d_k,energy"}}), ValidationError);
  CHECK_THROWS_AS(apply_settings(cfg, {{"format", "xml"}}), ValidationError);
}
