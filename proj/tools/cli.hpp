#pragma once

#include <iosfwd>
#include <string>

#include "ggcport/config.hpp"

namespace ggcport::cli {

/// Execute a validated run: dispatch to the library, write the output file
/// atomically, print a one-line machine-parsable summary to `summary_out`.
/// Returns 0 on success, 1 on domain errors (diagnostics go to `diag`).
int run(const config::RunConfig& cfg, std::ostream& summary_out, std::ostream& diag);

/// Write `content` to `path` via a temp file and rename, so failures never
/// leave partial output behind.
void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace ggcport::cli
