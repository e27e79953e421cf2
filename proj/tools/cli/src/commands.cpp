#include "qcoh/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>

#include "qcoh/analytic.hpp"
#include "qcoh/cli/figures.hpp"
#include "qcoh/cli/verify.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/conditioning.hpp"
#include "qcoh/error.hpp"

namespace qcoh::cli {

namespace {

void field(std::ostream& out, const char* name, double value) {
  out << name << ": " << format_number(value) << '\n';
}

}  // namespace

int cmd_coherence(const RunConfig& config, std::ostream& out) {
  const StateSpec spec = config.state();
  const CoherenceValue c = l1_coherence(spec.kernel(), config.integration);
  out << "state: " << spec.text() << '\n';
  field(out, "C", c.value);
  field(out, "C_error", c.error_estimate);
  if (const auto params = spec.gaussian_params()) {
    const double exact = analytic::gaussian_l1(*params);
    field(out, "C_analytic", exact);
    field(out, "rel_diff", std::abs(c.value - exact) / exact);
  }
  return kExitOk;
}

int cmd_condition(const RunConfig& config, std::ostream& out) {
  if (!config.x0_prime) throw ParseError("x0p", "condition requires --x0p");
  const StateSpec state = config.state();
  const StateSpec ancilla = config.ancilla();
  const DensityKernel rho = state.kernel();
  const DensityKernel rho0 = ancilla.kernel();
  const BeamSplitter bs = config.splitter();
  const ConditionalResult r = conditional_state(rho, rho0, bs, *config.x0_prime, config.integration);
  const double c = l1_coherence(rho, config.integration).value;
  const double cp = l1_coherence(r.kernel, config.integration).value;
  out << "state: " << state.text() << '\n' << "ancilla: " << ancilla.text() << '\n';
  field(out, "t", bs.t());
  field(out, "x0p", r.x0_prime);
  field(out, "p", r.density);
  field(out, "C", c);
  field(out, "Cp", cp);
  field(out, "ratio", cp / c);
  const auto g = state.gaussian_params();
  const auto g0 = ancilla.gaussian_params();
  if (g && g0) {
    const double law = analytic::output_l1(analytic::gaussian_l1(*g), analytic::gaussian_l1(*g0), bs);
    field(out, "Cp_analytic", law);
    field(out, "rel_diff", std::abs(cp - law) / law);
  }
  return kExitOk;
}

int cmd_figure(std::string_view name, const RunConfig& config, std::ostream& out) {
  const std::string csv = to_csv(figure_table(name, config));
  if (config.output_path == "-") {
    out << csv;
    return kExitOk;
  }
  const std::string path = config.output_path.empty() ? std::string(name) + ".csv" : config.output_path;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file << csv;
  if (!file.flush()) throw Error("failed writing '" + path + "'");
  out << "wrote " << path << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const std::vector<LawCheck> checks = run_law_checks(config);
  print_report(checks, out);
  for (const LawCheck& c : checks)
    if (!c.passed) return kExitVerificationFailed;
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Quadrature coherence of single-mode states behind a conditioned beam splitter", "qcoh"};
  app.set_config("--config", "", "Read key=value defaults (option names without dashes)");
  app.allow_config_extras(false);
  app.add_option("--state", config.state_spec, "System state spec")->capture_default_str();
  app.add_option("--ancilla", config.ancilla_spec, "Ancilla state spec")->capture_default_str();
  app.add_option("--t", config.t, "Beam splitter transmission")->capture_default_str();
  app.add_option("--x0p", config.x0_prime, "Measured outcome x0'");
  app.add_option("--half-width", config.integration.half_width, "Truncation half width L")
      ->capture_default_str();
  app.add_option("--rel-tol", config.integration.rel_tol)->capture_default_str();
  app.add_option("--abs-tol", config.integration.abs_tol)->capture_default_str();
  app.add_option("--depth", config.integration.max_depth, "Maximum bisection depth")->capture_default_str();
  app.add_option("--sweep-nodes", config.sweep_nodes, "Outcome grid nodes")->capture_default_str();
  app.add_option("--output,-o", config.output_path, "Figure CSV path ('-' for stdout)");
  app.add_flag("--negative-control", config.negative_control)->group("");

  std::string figure_name;
  CLI::App* coherence = app.add_subcommand("coherence", "l1 coherence of --state");
  CLI::App* condition = app.add_subcommand("condition", "Condition --state on outcome --x0p");
  CLI::App* figure = app.add_subcommand("figure", "Write figure data as CSV");
  figure->add_option("name", figure_name, "fig2 .. fig9")->required();
  CLI::App* verify = app.add_subcommand("verify", "Check every law and report");
  for (CLI::App* sub : {coherence, condition, figure, verify}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParseError;
  }

  try {
    config.validate();
    if (coherence->parsed()) return cmd_coherence(config, out);
    if (condition->parsed()) return cmd_condition(config, out);
    if (figure->parsed()) return cmd_figure(figure_name, config, out);
    return cmd_verify(config, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const NegligibleOutcomeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNegligibleOutcome;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIntegrationFailure;
  }
}

}  // namespace qcoh::cli
