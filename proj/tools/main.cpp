#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"GGC mixing laws, NMVM optimal portfolios and convergence sweeps"};
  app.name("ggcport");

  std::string config_path;
  std::string out_override;
  std::string format_override;
  std::int64_t seed_override = -1;
  app.add_option("--config", config_path, "Run configuration document")->required();
  app.add_option("--seed", seed_override, "Override the config seed");
  app.add_option("--out", out_override, "Override the output path");
  app.add_option("--format", format_override, "Override the output format")
      ->check(CLI::IsMember({"csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  ggcport::config::RunConfig cfg;
  try {
    cfg = ggcport::config::parse_config(buffer.str());
  } catch (const ggcport::config::config_error& err) {
    for (const auto& e : err.errors())
      std::cerr << "config error: " << e.path << ": " << e.message << "\n";
    return 2;
  }

  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) cfg.output = out_override;
  if (format_override == "csv") cfg.format = ggcport::config::OutputFormat::csv;
  if (format_override == "text") cfg.format = ggcport::config::OutputFormat::text;

  return ggcport::cli::run(cfg, std::cout, std::cerr);
}
