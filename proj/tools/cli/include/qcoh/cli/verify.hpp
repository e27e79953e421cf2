#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcoh/cli/run_config.hpp"

namespace qcoh::cli {

struct LawCheck {
  int criterion;
  std::string law;
  /// Largest allowed deviation (0 for exact sign or ordering checks).
  double tolerance;
  /// Largest deviation seen over the check's grid; counts for sign checks.
  double worst_deviation;
  bool passed;
  double seconds;
  /// Error text when the check threw instead of producing a number.
  std::string note;
};

std::vector<LawCheck> run_law_checks(const RunConfig& config);

void print_report(const std::vector<LawCheck>& checks, std::ostream& out);

}  // namespace qcoh::cli
