#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ggcport/density_grid.hpp"
#include "ggcport/distances.hpp"
#include "ggcport/portfolio.hpp"
#include "ggcport/robustness.hpp"
#include "ggcport/sampling.hpp"

namespace ggcport::cli {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string default_output(const config::RunConfig& cfg) {
  const std::string ext = cfg.format == config::OutputFormat::csv ? ".csv" : ".txt";
  if (cfg.command == config::Command::sample) return "sample.txt";
  return config::command_name(cfg.command) + ext;
}

// Two-column emitters shared by the scalar commands.
std::string table(const config::RunConfig& cfg, const std::string& col1,
                  const std::string& col2, const std::vector<double>& xs,
                  const std::vector<double>& ys) {
  std::string out;
  if (cfg.format == config::OutputFormat::csv) {
    out = col1 + "," + col2 + "\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out += format_number(xs[i]) + "," + format_number(ys[i]) + "\n";
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i)
      out += col1 + " = " + format_number(xs[i]) + ", " + col2 + " = " +
             format_number(ys[i]) + "\n";
  }
  return out;
}

struct RunOutput {
  std::string content;
  std::string summary_fields;
};

RunOutput run_laplace(const config::RunConfig& cfg) {
  std::vector<double> values;
  for (double s : cfg.s_values) values.push_back(laplace(*cfg.law, s).value());
  return {table(cfg, "s", "laplace", cfg.s_values, values),
          "points=" + std::to_string(values.size())};
}

RunOutput run_mean(const config::RunConfig& cfg) {
  const double m = mean(*cfg.law);
  std::string content = cfg.format == config::OutputFormat::csv
                            ? "mean\n" + format_number(m) + "\n"
                            : "mean = " + format_number(m) + "\n";
  return {content, "mean=" + format_number(m)};
}

RunOutput run_density(const config::RunConfig& cfg) {
  std::vector<double> values;
  for (double x : cfg.x_values) values.push_back(density(*cfg.law, x));
  return {table(cfg, "x", "density", cfg.x_values, values),
          "points=" + std::to_string(values.size())};
}

RunOutput run_distance(const config::RunConfig& cfg) {
  const DistanceReport r = distance_report(*cfg.law, *cfg.law2);
  std::string content;
  if (cfg.format == config::OutputFormat::csv) {
    content =
        "kolmogorov,total_variation,fm_lower,fm_upper,kolmogorov_error,total_variation_"
        "error\n" +
        format_number(r.kolmogorov) + "," + format_number(r.total_variation) + "," +
        format_number(r.fm_lower) + "," + format_number(r.fm_upper) + "," +
        format_number(r.kolmogorov_error) + "," + format_number(r.total_variation_error) +
        "\n";
  } else {
    content = "kolmogorov = " + format_number(r.kolmogorov) + "\n" +
              "total_variation = " + format_number(r.total_variation) + "\n" +
              "fm_lower = " + format_number(r.fm_lower) + "\n" +
              "fm_upper = " + format_number(r.fm_upper) + "\n" +
              "kolmogorov_error = " + format_number(r.kolmogorov_error) + "\n" +
              "total_variation_error = " + format_number(r.total_variation_error) + "\n";
  }
  return {content, "d_tv=" + format_number(r.total_variation) +
                       " d_kol=" + format_number(r.kolmogorov)};
}

RunOutput run_optimize(const config::RunConfig& cfg) {
  const NmvmModel model = cfg.make_model();
  const PortfolioSolution sol = optimal_portfolio(model, *cfg.market);
  std::string content;
  if (cfg.format == config::OutputFormat::csv) {
    std::string header = "q_min,q_value,regular,iterations";
    std::string row = format_number(sol.q_min) + "," + format_number(sol.q_value) + "," +
                      (sol.regular ? "1" : "0") + "," +
                      std::to_string(sol.diagnostics.iterations);
    for (Eigen::Index i = 0; i < sol.x_star.size(); ++i) {
      header += ",x_" + std::to_string(i);
      row += "," + format_number(sol.x_star(i));
    }
    content = header + "\n" + row + "\n";
  } else {
    content = "q_min = " + format_number(sol.q_min) + "\n" +
              "q_value = " + format_number(sol.q_value) + "\n" +
              std::string("regular = ") + (sol.regular ? "true" : "false") + "\n" +
              "iterations = " + std::to_string(sol.diagnostics.iterations) + "\n";
    for (Eigen::Index i = 0; i < sol.x_star.size(); ++i)
      content += "x_" + std::to_string(i) + " = " + format_number(sol.x_star(i)) + "\n";
    if (!sol.diagnostics.message.empty())
      content += "note = " + sol.diagnostics.message + "\n";
  }
  return {content, "q_min=" + format_number(sol.q_min) +
                       " regular=" + (sol.regular ? "1" : "0")};
}

RunOutput run_sweep(const config::RunConfig& cfg) {
  const NmvmModel model = cfg.make_model();
  PerturbationSchedule spec;
  spec.steps = cfg.schedule->steps;
  spec.decay = cfg.schedule->decay;
  spec.seed = cfg.seed;
  spec.directions.dmu = cfg.schedule->dmu;
  spec.directions.dgamma = cfg.schedule->dgamma;
  spec.directions.da = cfg.schedule->da;
  spec.directions.law_path.kind = cfg.schedule->law_path_kind;
  spec.directions.law_path.coefficients = cfg.schedule->law_path_coefficients;

  const std::vector<NmvmModel> schedule = make_schedule(model, spec);
  const RobustnessReport report = run_sweep(model, *cfg.market, schedule);
  const ConvergenceSummary summary =
      check_convergence(report, cfg.tolerances.value_or(ToleranceSpec{}));

  std::string content = cfg.format == config::OutputFormat::csv
                            ? robustness_report_csv(report)
                            : robustness_report_text(report, summary);
  std::string failed;
  for (const auto& name : summary.failed_names()) {
    if (!failed.empty()) failed += ";";
    failed += name;
  }
  std::string fields = "steps=" + std::to_string(report.steps.size()) +
                       " checks_passed=" + (summary.all_passed ? "1" : "0");
  if (!failed.empty()) fields += " failed=\"" + failed + "\"";
  return {content, fields};
}

RunOutput run_sample(const config::RunConfig& cfg) {
  const SampleBatch batch = sample_mixing(*cfg.law, cfg.count, cfg.seed);
  return {format_sample_batch(batch),
          "count=" + std::to_string(batch.values.size()) +
              " acceptance=" + format_number(batch.envelope_acceptance)};
}

}  // namespace

void write_file_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

int run(const config::RunConfig& cfg, std::ostream& summary_out, std::ostream& diag) {
  const std::string output = cfg.output.empty() ? default_output(cfg) : cfg.output;
  RunOutput result;
  try {
    switch (cfg.command) {
      case config::Command::laplace: result = run_laplace(cfg); break;
      case config::Command::mean: result = run_mean(cfg); break;
      case config::Command::density: result = run_density(cfg); break;
      case config::Command::distance: result = run_distance(cfg); break;
      case config::Command::optimize: result = run_optimize(cfg); break;
      case config::Command::sweep: result = run_sweep(cfg); break;
      case config::Command::sample: result = run_sample(cfg); break;
    }
    write_file_atomically(output, result.content);
  } catch (const std::exception& err) {
    diag << "error: " << err.what() << "\n";
    summary_out << "status=error command=" << config::command_name(cfg.command) << "\n";
    return 1;
  }
  summary_out << "status=ok command=" << config::command_name(cfg.command)
              << " output=" << output << " seed=" << cfg.seed;
  if (!result.summary_fields.empty()) summary_out << " " << result.summary_fields;
  summary_out << "\n";
  return 0;
}

}  // namespace ggcport::cli
