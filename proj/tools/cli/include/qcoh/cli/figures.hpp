#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qcoh/cli/run_config.hpp"

namespace qcoh::cli {

inline constexpr std::array<std::string_view, 8> kFigureNames = {
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};

struct Table {
  /// Written as "# " lines ahead of the header.
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Computes every point of the named figure. Throws DomainError for an unknown
/// name; library errors of any single point abort the whole sweep.
Table figure_table(std::string_view name, const RunConfig& config);

/// CSV text: comments, header, rows with 9 significant digits, LF endings.
std::string to_csv(const Table& table);

/// 9-significant-digit rendering used in CSV cells and reports.
std::string format_number(double v);

}  // namespace qcoh::cli
