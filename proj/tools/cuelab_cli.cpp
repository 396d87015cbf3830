// cuelab: command-line front end for the sampler, exact laws and rate studies.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuelab/bounds.hpp"
#include "cuelab/config_file.hpp"
#include "cuelab/counting.hpp"
#include "cuelab/dpp_sampler.hpp"
#include "cuelab/errors.hpp"
#include "cuelab/harness.hpp"
#include "cuelab/metrics.hpp"
#include "cuelab/report.hpp"
#include "cuelab/sine_kernel.hpp"

using namespace cuelab;
using json = nlohmann::ordered_json;

namespace {

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(path, text);
  }
}

std::string render(const RateTable& t, OutputFormat f) {
  return f == OutputFormat::kCsv ? rate_table_csv(t) : rate_table_json(t);
}

json number_or_null(double v) {
  if (!std::isfinite(v)) {
    return nullptr;
  }
  return v;
}

// Shared experiment flags; string-valued so that config-file values can be
// overridden only by flags that were actually given.
struct ExperimentFlags {
  std::string config_path;
  std::string n_grid;
  std::string replicates;
  std::string seed;
  std::string metrics;
  std::string moments;
  std::string format;
  std::string out;
  std::string threads;
  std::string svg;
  std::string diagnostics;
  std::string raw;

  void attach(CLI::App* app, bool with_svg) {
    app->add_option("--config", config_path, "flat key = value file mirroring the flags");
    app->add_option("--n-grid", n_grid, "comma-separated matrix sizes");
    app->add_option("--replicates", replicates, "replicates per N");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
    app->add_option("--format", format, "csv or json");
    app->add_option("--out", out, "output path (default stdout)");
    if (with_svg) {
      app->add_option("--metrics", metrics, "comma-separated subset of d_k,w1,max_gap,grid_sup");
      app->add_option("--moments", moments, "comma-separated moment orders");
      app->add_option("--svg", svg, "write the normalized-ratio chart here");
      app->add_option("--diagnostics", diagnostics, "write normalized rate diagnostics here");
    } else {
      app->add_option("--raw", raw, "write per-replicate maximal gaps (CSV) here");
    }
  }

  ExperimentConfig resolve(std::vector<std::string> passthrough) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      const auto settings = parse_key_value(read_text_file(config_path));
      apply_settings(cfg, settings, passthrough);
      auto pick = [&](const char* key, std::string& slot) {
        if (slot.empty()) {
          if (auto it = settings.find(key); it != settings.end()) {
            slot = it->second;
          }
        }
      };
      pick("svg", svg);
      pick("diagnostics", diagnostics);
      pick("raw", raw);
    }
    std::map<std::string, std::string> flags;
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) {
        flags[key] = v;
      }
    };
    put("n-grid", n_grid);
    put("replicates", replicates);
    put("seed", seed);
    put("metrics", metrics);
    put("moments", moments);
    put("format", format);
    put("out", out);
    put("threads", threads);
    apply_settings(cfg, flags);
    cfg.validate();
    return cfg;
  }
};

int run_sample(std::size_t n, std::uint64_t seed, std::uint64_t replicate,
               const std::string& format, const std::string& out) {
  const auto cfg = KernelConfig::make(n);
  auto stream = replicate_stream(seed, n, replicate);
  const auto result = sample_eigenangles(cfg, stream);
  std::ostringstream os;
  if (parse_format(format) == OutputFormat::kJson) {
    json j;
    j["n"] = n;
    j["seed"] = seed;
    j["replicate"] = replicate;
    j["angles"] = result.sample.angles;
    j["proposals"] = result.stats.proposals_used;
    os << j.dump(2) << '\n';
  } else {
    os << "index,angle\n";
    char buf[64];
    for (std::size_t i = 0; i < result.sample.angles.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, result.sample.angles[i]);
      os << buf;
    }
  }
  write_output(out, os.str());
  return 0;
}

int run_exact(std::size_t n, double theta, const std::string& format, const std::string& out) {
  const auto cfg = KernelConfig::make(n);
  const auto spectrum = hermitian_eigenvalues(arc_kernel(cfg, theta));
  const auto law = poisson_binomial(spectrum);
  const auto vb = variance_bounds_check(n, theta);

  std::ostringstream os;
  if (parse_format(format) == OutputFormat::kJson) {
    json j;
    j["n"] = n;
    j["theta"] = theta;
    j["spectrum"] = spectrum.params;
    j["clamp_excess"] = spectrum.clamp_excess;
    j["pmf"] = law.pmf;
    j["mean"] = law.mean;
    j["expected_mean"] = static_cast<double>(n) * theta / kTwoPi;
    j["variance"] = law.variance;
    json bounds;
    bounds["global_upper"] = vb.global_upper;
    bounds["global_satisfied"] = vb.global_satisfied;
    bounds["local_applicable"] = vb.local_applicable;
    if (vb.local_applicable) {
      bounds["local_lower"] = *vb.local_lower;
      bounds["local_upper"] = *vb.local_upper;
    }
    bounds["local_satisfied"] = vb.local_satisfied;
    j["variance_bounds"] = bounds;
    os << j.dump(2) << '\n';
  } else {
    os << "quantity,index,value\n";
    auto row = [&](const char* q, const std::string& idx, double v) {
      os << q << ',' << idx << ',' << format_number(v) << '\n';
    };
    row("mean", "", law.mean);
    row("expected_mean", "", static_cast<double>(n) * theta / kTwoPi);
    row("variance", "", law.variance);
    row("global_upper", "", vb.global_upper);
    row("global_satisfied", "", vb.global_satisfied ? 1.0 : 0.0);
    if (vb.local_applicable) {
      row("local_lower", "", *vb.local_lower);
      row("local_upper", "", *vb.local_upper);
    }
    row("local_satisfied", "", vb.local_satisfied ? 1.0 : 0.0);
    for (std::size_t k = 0; k < spectrum.params.size(); ++k) {
      row("lambda", std::to_string(k + 1), spectrum.params[k]);
    }
    for (std::size_t k = 0; k < law.pmf.size(); ++k) {
      row("pmf", std::to_string(k), law.pmf[k]);
    }
  }
  write_output(out, os.str());
  return 0;
}

int run_rates(ExperimentFlags& flags) {
  const auto cfg = flags.resolve({"svg", "diagnostics"});
  const auto table = run_experiment(cfg);
  write_output(cfg.output_path, render(table, cfg.output_format));
  if (!flags.diagnostics.empty() || !flags.svg.empty()) {
    const auto diag = rate_diagnostics(table);
    if (!flags.diagnostics.empty()) {
      emit(diag, cfg.output_format, flags.diagnostics);
    }
    if (!flags.svg.empty()) {
      write_text_file(flags.svg, ratio_chart_svg(diag));
    }
  }
  return 0;
}

int run_gaps(ExperimentFlags& flags) {
  auto cfg = flags.resolve({"raw"});
  cfg.metrics_selected = {Metric::kMaxGap};
  std::ostringstream raw;
  raw << "N,replicate,max_gap,scaled\n";
  RateTable table;
  table.metrics = cfg.metrics_selected;
  table.moment_orders = cfg.moment_orders;
  for (const auto n : cfg.n_grid) {
    const auto reports = simulate_reports(n, cfg.replicates, cfg.master_seed, cfg.threads);
    table.rows.push_back(aggregate_row(n, reports, cfg.metrics_selected, cfg.moment_orders));
    if (!flags.raw.empty()) {
      const double nd = static_cast<double>(n);
      const double scale = n > 1 ? nd / std::sqrt(32.0 * std::log(nd)) : std::nan("");
      for (std::size_t r = 0; r < reports.size(); ++r) {
        raw << n << ',' << r << ',' << format_number(reports[r].max_gap) << ','
            << format_number(reports[r].max_gap * scale) << '\n';
      }
    }
  }
  write_output(cfg.output_path, render(table, cfg.output_format));
  if (!flags.raw.empty()) {
    write_text_file(flags.raw, raw.str());
  }
  return 0;
}

int run_certify(std::size_t n, std::size_t replicates, std::uint64_t seed, std::size_t threads,
                const std::string& format, const std::string& out) {
  const auto cert = search_bonferroni_certificate(n);
  std::optional<MetricSummary> empirical;
  if (replicates > 0) {
    const auto reports = simulate_reports(n, replicates, seed, threads);
    std::vector<double> hits(reports.size());
    for (std::size_t r = 0; r < reports.size(); ++r) {
      hits[r] = reports[r].d_k > cert.x ? 1.0 : 0.0;
    }
    empirical = summarize(hits);
  }
  std::ostringstream os;
  if (parse_format(format) == OutputFormat::kJson) {
    json j;
    j["n"] = n;
    j["x"] = cert.x;
    j["arcs"] = cert.arcs;
    j["arc_tail"] = cert.p;
    j["tp"] = cert.tp();
    j["lower_bound"] = cert.lower;
    if (empirical) {
      j["replicates"] = replicates;
      j["seed"] = seed;
      j["empirical"] = empirical->mean;
      j["empirical_se"] = number_or_null(empirical->standard_error);
    }
    os << j.dump(2) << '\n';
  } else {
    os << "N,x,arcs,arc_tail,tp,lower_bound";
    if (empirical) {
      os << ",replicates,empirical,empirical_se";
    }
    os << '\n'
       << n << ',' << format_number(cert.x) << ',' << cert.arcs << ',' << format_number(cert.p)
       << ',' << format_number(cert.tp()) << ',' << format_number(cert.lower);
    if (empirical) {
      os << ',' << replicates << ',' << format_number(empirical->mean) << ','
         << format_number(empirical->standard_error);
    }
    os << '\n';
  }
  write_output(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CUE eigenangle lab: exact counting laws, sampling and rate studies"};
  app.require_subcommand(1);

  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  double theta = 0.0;
  std::size_t replicates = 0;
  std::size_t threads = 0;
  std::string format = "csv";
  std::string exact_format = "json";
  std::string out;

  auto* sample = app.add_subcommand("sample", "draw one eigenangle sample");
  sample->add_option("--n", n, "matrix size")->required();
  sample->add_option("--seed", seed, "master seed");
  sample->add_option("--replicate", replicate, "replicate index");
  sample->add_option("--format", format, "csv or json");
  sample->add_option("--out", out, "output path (default stdout)");

  auto* exact = app.add_subcommand("exact", "exact law of the count in [0, theta)");
  exact->add_option("--n", n, "matrix size")->required();
  exact->add_option("--theta", theta, "arc length in [0, 2pi]")->required();
  exact->add_option("--format", exact_format, "csv or json");
  exact->add_option("--out", out, "output path (default stdout)");

  ExperimentFlags rates_flags;
  auto* rates = app.add_subcommand("rates", "rate study over an N grid");
  rates_flags.attach(rates, true);

  ExperimentFlags gaps_flags;
  auto* gaps = app.add_subcommand("gaps", "maximal spacing study");
  gaps_flags.attach(gaps, false);

  auto* certify = app.add_subcommand("certify", "Bonferroni lower-bound certificate");
  certify->add_option("--n", n, "matrix size")->required();
  certify->add_option("--replicates", replicates, "Monte Carlo replicates (0 = none)");
  certify->add_option("--seed", seed, "master seed");
  certify->add_option("--threads", threads, "worker threads (0 = all cores)");
  certify->add_option("--format", format, "csv or json");
  certify->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*sample) {
      return run_sample(n, seed, replicate, format, out);
    }
    if (*exact) {
      return run_exact(n, theta, exact_format, out);
    }
    if (*rates) {
      return run_rates(rates_flags);
    }
    if (*gaps) {
      return run_gaps(gaps_flags);
    }
    if (*certify) {
      return run_certify(n, replicates, seed, threads, format, out);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
