#include "lnhom/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lnhom/error.hpp"
#include "lnhom/field_sampler.hpp"
#include "lnhom/homogenization.hpp"
#include "lnhom/io.hpp"
#include "lnhom/limiting_variance.hpp"
#include "lnhom/normality.hpp"
#include "lnhom/seeds.hpp"
#include "lnhom/statistics.hpp"

namespace lnhom::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json fit_json(const RateFitReport& r) {
  json out;
  out["quantity"] = r.quantity;
  out["slope"] = r.fit.slope;
  out["stderr"] = r.fit.slope_stderr;
  out["intercept"] = r.fit.intercept;
  out["r2"] = r.fit.r2;
  out["expected_exponent"] = r.expected_exponent;
  out["eps"] = r.eps;
  out["values"] = r.values;
  if (r.insufficient_replicates) out["insufficient_replicates"] = true;
  return out;
}

json model_json(const ExperimentConfig& config) {
  const auto& m = config.sweep.model;
  return {{"family", std::string(to_string(m.family))},
          {"sigma0", m.sigma0},
          {"ell", m.ell},
          {"beta", m.beta},
          {"replicates", config.sweep.replicates}};
}

/// Rate fits need positive values at every eps; a deterministic problem
/// (sigma0 = 0) has none, and is reported without a fit.
template <class Fn>
json guarded_fit(Fn&& fn) {
  try {
    return fit_json(fn());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateFit) throw;
    return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
}

fs::path ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_outputs(const ExperimentConfig& config, const std::string& command,
                   const std::vector<ObservableRecord>& records, const json& report) {
  const fs::path dir = ensure_directory(config.output_directory);
  for (const auto& format : config.formats) {
    std::ostringstream table;
    if (format == "csv") {
      write_records_csv(table, records);
      write_text_file(dir / (command + "_records.csv"), table.str());
    } else {
      write_records_jsonl(table, records);
      write_text_file(dir / (command + "_records.jsonl"), table.str());
    }
  }
  write_text_file(dir / (command + "_report.json"), dump_report(report));
  write_text_file(dir / (command + "_config.ini"), serialize_config(config));

  // The timestamp sits alone on the first line; everything below it is a
  // function of the config.
  const json stamp = {{"timestamp", utc_timestamp()}};
  const json content = {{"command", command},
                        {"config_hash", config_hash(config)},
                        {"version", kVersion},
                        {"base_seed", config.sweep.base_seed},
                        {"seed_rule", "splitmix64(splitmix64(splitmix64(base) ^ j) + r)"},
                        {"eps_exponents", config.sweep.eps_exponents},
                        {"replicates", config.sweep.replicates}};
  write_text_file(dir / (command + "_manifest.jsonl"), stamp.dump() + "\n" + content.dump() + "\n");
}

std::vector<ObservableRecord> sweep(const ExperimentConfig& config, unsigned threads) {
  return run_sweep(config.sweep, SweepOptions{threads, config.record_runtime});
}

}  // namespace

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

ExperimentConfig apply(ExperimentConfig config, const Overrides& o) {
  if (o.seed) config.sweep.base_seed = *o.seed;
  if (o.replicates) config.sweep.replicates = *o.replicates;
  if (o.out) config.output_directory = *o.out;
  validate(config);
  return config;
}

json oscillation_report(const std::vector<ObservableRecord>& records,
                        const ExperimentConfig& config) {
  const auto& model = config.sweep.model;
  json out;
  out["subcommand"] = "oscillation";
  out["model"] = model_json(config);
  out["insufficient_replicates"] = config.sweep.replicates < 2;
  json fits = json::array();
  for (Column c : {Column::ErrU, Column::ErrDu, Column::ErrTwoScale})
    fits.push_back(guarded_fit([&] { return oscillation_rate_fit(records, c, model); }));
  out["fits"] = fits;
  out["expected_exponent"] = oscillation_rate(model).exponent();
  out["log_corrected_abscissa"] = oscillation_rate(model).has_log_factor();
  return out;
}

json fluctuation_report(const std::vector<ObservableRecord>& records,
                        const ExperimentConfig& config) {
  const auto& sc = config.sweep;
  const RateModel rate = variance_rate(sc.model);
  const LimitingVariance limit = limiting_variance(sc.model, sc.f, sc.g);
  json out;
  out["subcommand"] = "fluctuation";
  out["model"] = model_json(config);
  out["sigma2"] = limit.sigma2;
  out["insufficient_replicates"] = sc.replicates < 100;

  if (sc.replicates >= 2) {
    out["variance_fit"] = guarded_fit([&] { return fluctuation_variance_fit(records, Column::I, sc.model); });
    out["variance_fit_K"] = guarded_fit([&] { return power_variance_fit(records, Column::K, 2.0); });
  }

  json rows = json::array();
  for (int j : exponents_in(records)) {
    const auto at = select_j(records, j);
    const auto values = column_values(at, Column::I);
    json row;
    row["j"] = j;
    row["eps"] = at.front().eps;
    row["variance"] = values.size() >= 2 ? sample_variance(values) : 0.0;
    if (at.size() >= 100) {
      const MCEstimate s = empirical_sigma_eps(at, rate);
      row["sigma_eps2"] = s.mean;
      row["sigma_eps2_stderr"] = s.stderr;
      if (limit.sigma2 > 0.0) row["ratio_to_limit"] = s.mean / limit.sigma2;
    }
    if (limit.sigma2 > 0.0 && values.size() >= 2 && row["variance"].get<double>() > 0.0) {
      const double scale = std::sqrt(rate.value(at.front().eps) * limit.sigma2);
      const NormalityReport nr = normality_test(values, scale);
      row["ks"] = nr.ks;
      row["w1"] = nr.w1;
      row["tv_hist"] = nr.tv_hist;
      row["ks_critical_1pct"] = ks_critical_1pct(nr.n);
    }
    rows.push_back(row);
  }
  out["per_eps"] = rows;
  return out;
}

json pathwise_report(const std::vector<ObservableRecord>& records, const ExperimentConfig& config) {
  const PathwiseReport p = pathwise_check(records, config.sweep);
  json out;
  out["subcommand"] = "pathwise";
  out["model"] = model_json(config);
  out["deterministic_part"] = p.deterministic_part;
  out["sigma2"] = p.sigma2;
  out["commutator_sigma2"] = p.commutator_sigma2;
  out["identity_rel_error"] = p.identity_rel_error;
  json rows = json::array();
  for (const auto& r : p.rows)
    rows.push_back({{"j", r.j},
                    {"eps", r.eps},
                    {"rms_residual", r.rms_residual},
                    {"rms_literal", r.rms_literal},
                    {"rms_K", r.rms_K}});
  out["per_eps"] = rows;
  if (p.fit_available) {
    out["residual_fit"] = {{"quantity", "rms_residual"},
                           {"slope", p.residual_fit.slope},
                           {"stderr", p.residual_fit.slope_stderr},
                           {"intercept", p.residual_fit.intercept},
                           {"r2", p.residual_fit.r2},
                           {"expected_exponent", 0.5}};
  }
  if (config.sweep.replicates >= 2)
    out["variance_fit_K"] = guarded_fit([&] { return power_variance_fit(records, Column::K, 2.0); });
  return out;
}

fs::path cmd_sample(const ExperimentConfig& config, int j, std::size_t replicate,
                    const fs::path& file) {
  if (j < 0 || j > 30) throw Error(ErrorCode::Config, "--j must lie in [0, 30]");
  const auto& sc = config.sweep;
  const Grid grid = make_grid(std::ldexp(1.0, j), sc.model, sc.points_per_corrlen);
  const auto seed = derive_seed(sc.base_seed, static_cast<std::uint64_t>(j), replicate);
  const FieldSample sample = sample_field(sc.model, grid, seed, sc.sampler);
  fs::path path = file;
  if (path.empty())
    path = ensure_directory(config.output_directory) /
           ("field_j" + std::to_string(j) + "_r" + std::to_string(replicate) + ".csv");
  std::ostringstream text;
  write_field_csv(text, sample);
  write_text_file(path, text.str());
  return path;
}

json cmd_oscillation(const ExperimentConfig& config, unsigned threads) {
  const auto records = sweep(config, threads);
  json report = oscillation_report(records, config);
  write_outputs(config, "oscillation", records, report);
  return report;
}

json cmd_fluctuation(const ExperimentConfig& config, unsigned threads) {
  const auto records = sweep(config, threads);
  json report = fluctuation_report(records, config);
  write_outputs(config, "fluctuation", records, report);
  return report;
}

json cmd_pathwise(const ExperimentConfig& config, unsigned threads) {
  const auto records = sweep(config, threads);
  json report = pathwise_report(records, config);
  write_outputs(config, "pathwise", records, report);
  return report;
}

json cmd_report(const ExperimentConfig& config, const fs::path& records_path) {
  std::istringstream in(read_text_file(records_path));
  const auto records = read_records_csv(in);
  if (records.empty()) throw Error(ErrorCode::Io, "records file holds no rows");
  json report = {{"oscillation", oscillation_report(records, config)},
                 {"fluctuation", fluctuation_report(records, config)},
                 {"pathwise", pathwise_report(records, config)}};
  const fs::path dir = ensure_directory(config.output_directory);
  write_text_file(dir / "report.json", dump_report(report));
  return report;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Log-normal 1D stochastic homogenization experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  Overrides overrides;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "INI experiment file")->required();
    sub->add_option("--seed", seed, "override sweep.base_seed");
    sub->add_option("--replicates", replicates, "override sweep.replicates");
    sub->add_option("--out", out, "override output.directory");
    sub->add_option("--threads", overrides.threads,
                    "worker threads (default: LNHOM_THREADS or hardware concurrency)");
  };

  int j = 0;
  std::size_t replicate = 0;
  std::string file;
  auto* sample = app.add_subcommand("sample", "dump one field realization as x,g,a CSV");
  add_common(sample);
  sample->add_option("--j", j, "eps exponent; the field covers [0, 2^j]")->required();
  sample->add_option("--replicate", replicate, "replicate index");
  sample->add_option("--file", file, "output file (default: <out>/field_j<j>_r<r>.csv)");

  auto* osc = app.add_subcommand("oscillation", "oscillation-rate sweep and slope fits");
  add_common(osc);
  auto* flu = app.add_subcommand("fluctuation", "variance scaling, limiting variance, normality");
  add_common(flu);
  auto* path = app.add_subcommand("pathwise", "commutator decomposition of the observable");
  add_common(path);
  std::string records;
  auto* rep = app.add_subcommand("report", "recompute all reports from a records CSV");
  add_common(rep);
  rep->add_option("--records", records, "records CSV written by a sweep subcommand")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (CLI::App* sub : {sample, osc, flu, path, rep}) {
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) overrides.seed = seed;
      if (sub->count("--replicates")) overrides.replicates = replicates;
      if (sub->count("--out")) overrides.out = out;
    }
    if (overrides.threads == 0) {
      if (const char* env = std::getenv("LNHOM_THREADS")) overrides.threads = std::atoi(env);
    }
    const ExperimentConfig config = apply(load_config(config_path), overrides);

    if (sample->parsed()) {
      std::cout << cmd_sample(config, j, replicate, file).string() << "\n";
    } else if (osc->parsed()) {
      std::cout << dump_report(cmd_oscillation(config, overrides.threads));
    } else if (flu->parsed()) {
      std::cout << dump_report(cmd_fluctuation(config, overrides.threads));
    } else if (path->parsed()) {
      std::cout << dump_report(cmd_pathwise(config, overrides.threads));
    } else {
      std::cout << dump_report(cmd_report(config, records));
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace lnhom::cli
