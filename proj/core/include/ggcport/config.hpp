#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ggcport/mixing.hpp"
#include "ggcport/model.hpp"
#include "ggcport/robustness.hpp"

namespace ggcport::config {

struct FieldError {
  std::string path;  ///< "line 7" for syntax errors, "law.components[0].alpha" for semantic ones
  std::string message;
};

/// Carries the complete list of validation problems, not just the first.
class config_error : public std::runtime_error {
 public:
  explicit config_error(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

enum class Command { laplace, mean, density, distance, optimize, sweep, sample };
enum class OutputFormat { csv, text };

std::string command_name(Command c);
std::optional<Command> command_from_name(const std::string& name);

struct ModelSection {
  Eigen::VectorXd mu;
  Eigen::VectorXd gamma_vec;
  Eigen::MatrixXd a_matrix;
};

struct ScheduleSection {
  std::size_t steps = 0;
  double decay = 0.5;
  Eigen::VectorXd dmu;
  Eigen::VectorXd dgamma;
  Eigen::MatrixXd da;
  LawPathKind law_path_kind = LawPathKind::scale_drift;
  std::vector<double> law_path_coefficients;
};

/// One validated run: exactly one command plus the sections it needs.
struct RunConfig {
  Command command = Command::mean;
  std::uint64_t seed = 0;
  std::string output;  ///< empty: derived from the command at run time
  OutputFormat format = OutputFormat::csv;

  std::optional<MixingLaw> law;
  std::optional<MixingLaw> law2;
  std::optional<ModelSection> model;
  std::optional<MarketSpec> market;
  std::optional<ScheduleSection> schedule;
  std::optional<ToleranceSpec> tolerances;

  std::vector<double> s_values;  ///< laplace arguments
  std::vector<double> x_values;  ///< density arguments
  std::size_t count = 0;         ///< sample size

  NmvmModel make_model() const;  ///< requires model and law sections
};

/// Parse and validate a config document; throws config_error carrying every
/// syntax and semantic problem found.
RunConfig parse_config(const std::string& text);

/// Canonical document form: fixed section and key order, 17 significant
/// digits. parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& cfg);

/// Law section body serialization, shared with sample-batch descriptors.
std::string serialize_law_section(const MixingLaw& law, const std::string& section_name);

}  // namespace ggcport::config
