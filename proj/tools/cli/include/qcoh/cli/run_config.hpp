#pragma once

#include <optional>
#include <string>

#include "qcoh/conditioning.hpp"
#include "qcoh/numquad.hpp"
#include "qcoh/state_spec.hpp"

namespace qcoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitIntegrationFailure = 3;
inline constexpr int kExitNegligibleOutcome = 4;

/// Settings shared by every subcommand.
struct RunConfig {
  std::string state_spec = "vacuum";
  std::string ancilla_spec = "vacuum";
  double t = 0.70710678118654752;
  std::optional<double> x0_prime;
  IntegrationConfig integration;
  int sweep_nodes = kDefaultSweepNodes;
  /// Figure output file; empty means "<figure name>.csv", "-" means stdout.
  std::string output_path;
  /// Replace every splitter in the Gaussian verification checks by one with r = 1 - t.
  bool negative_control = false;

  /// Throws ParseError for unparsable specs, DomainError for out-of-range numbers.
  void validate() const;

  StateSpec state() const { return StateSpec::parse(state_spec); }
  StateSpec ancilla() const { return StateSpec::parse(ancilla_spec); }
  BeamSplitter splitter() const { return BeamSplitter(t); }
};

}  // namespace qcoh::cli
