#pragma once

#include <iosfwd>
#include <string_view>

#include "qcoh/cli/run_config.hpp"

namespace qcoh::cli {

/// Coherence of --state, with the closed form for Gaussian states.
int cmd_coherence(const RunConfig& config, std::ostream& out);

/// Conditioning of --state on outcome --x0p of the --ancilla mode.
int cmd_condition(const RunConfig& config, std::ostream& out);

/// Writes the CSV of one figure to config.output_path.
int cmd_figure(std::string_view name, const RunConfig& config, std::ostream& out);

/// Runs every law check and prints the report.
int cmd_verify(const RunConfig& config, std::ostream& out);

/// Parses the command line, dispatches, and maps library errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcoh::cli
