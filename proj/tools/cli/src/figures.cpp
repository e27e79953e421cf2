#include "qcoh/cli/figures.hpp"

#include <tbb/parallel_for.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "qcoh/coherence.hpp"
#include "qcoh/conditioning.hpp"
#include "qcoh/error.hpp"

namespace qcoh::cli {

namespace {

constexpr int kMaxPhotonNumber = 10;
const int kOutcomeCurves[] = {1, 2, 3};

// Points are independent; rows are stored by index so the output order never
// depends on scheduling.
std::vector<std::vector<double>> sweep(std::size_t count,
                                       const std::function<std::vector<double>(std::size_t)>& row) {
  std::vector<std::vector<double>> rows(count);
  tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { rows[i] = row(i); });
  return rows;
}

std::vector<double> uniform(double lo, double hi, int intervals) {
  std::vector<double> out;
  for (int i = 0; i <= intervals; ++i) out.push_back(lo + (hi - lo) * i / intervals);
  return out;
}

DensityKernel fock(int n) { return pure_kernel(fock_wavefunction(FockIndex(n))); }
DensityKernel vacuum() { return fock(0); }

// l1 coherence, through (integral |phi|)^2 whenever the kernel is phi(x) phi(x').
double kernel_l1(const DensityKernel& k, const IntegrationConfig& cfg) {
  if (const auto& phi = k.rank_one_factor()) return l1_coherence_pure(*phi, cfg).value;
  return l1_coherence(k, cfg).value;
}

std::string curve_name(const char* symbol, int n) { return std::string(symbol) + "_n" + std::to_string(n); }

Table fig2(const RunConfig& cfg) {
  Table table;
  table.comments = {"fig2: Cp - C versus t, conditioned on x0p = 0, vacuum ancilla",
                    "curves: squeezed input dx = 0.25 and dx = 1", "t: 0 to 1, step 0.05"};
  table.columns = {"t", "dC_dx0.25", "dC_dx1"};
  const std::vector<double> ts = uniform(0.0, 1.0, 20);
  const double widths[] = {0.25, 1.0};
  double c[2];
  for (int k = 0; k < 2; ++k) c[k] = kernel_l1(gaussian_schell_kernel(squeezed_params(widths[k])), cfg.integration);
  table.rows = sweep(ts.size(), [&](std::size_t i) {
    std::vector<double> row = {ts[i]};
    for (int k = 0; k < 2; ++k) {
      const ConditionalResult r = conditional_state(gaussian_schell_kernel(squeezed_params(widths[k])),
                                                    vacuum(), BeamSplitter(ts[i]), 0.0, cfg.integration);
      row.push_back(kernel_l1(r.kernel, cfg.integration) - c[k]);
    }
    return row;
  });
  return table;
}

Table fig3(const RunConfig& cfg) {
  Table table;
  table.comments = {"fig3: C of the Fock state |n>", "n: 0 to 10"};
  table.columns = {"n", "C"};
  table.rows = sweep(kMaxPhotonNumber + 1, [&](std::size_t n) {
    return std::vector<double>{double(n), l1_coherence(fock(int(n)), cfg.integration).value};
  });
  return table;
}

// Shared sweep of fig4..fig6: Fock n = 1, 2, 3 with vacuum ancilla at t = 1/sqrt(2).
Table outcome_figure(const RunConfig& cfg, double hi, int intervals, const char* symbol,
                     const std::function<double(int, double, double)>& value) {
  Table table;
  table.columns = {"x0p"};
  for (int n : kOutcomeCurves) table.columns.push_back(curve_name(symbol, n));
  const std::vector<double> xs = uniform(0.0, hi, intervals);
  double c[4] = {};
  for (int n : kOutcomeCurves) c[n] = kernel_l1(fock(n), cfg.integration);
  table.rows = sweep(xs.size(), [&](std::size_t i) {
    std::vector<double> row = {xs[i]};
    for (int n : kOutcomeCurves) row.push_back(value(n, xs[i], c[n]));
    return row;
  });
  return table;
}

Table fig4(const RunConfig& cfg) {
  const BeamSplitter bs = BeamSplitter::balanced();
  Table table = outcome_figure(cfg, 3.0, 60, "ratio", [&](int n, double x0p, double c) {
    return kernel_l1(conditional_state(fock(n), vacuum(), bs, x0p, cfg.integration).kernel,
                     cfg.integration) / c;
  });
  table.comments = {"fig4: Cp(x0p)/C for Fock input n, vacuum ancilla, t = 1/sqrt(2)",
                    "x0p: 0 to 3, step 0.05 (curves are even in x0p)"};
  return table;
}

Table fig5(const RunConfig& cfg) {
  const BeamSplitter bs = BeamSplitter::balanced();
  Table table = outcome_figure(cfg, 5.0, 200, "p", [&](int n, double x0p, double) {
    return outcome_density(fock(n), vacuum(), bs, x0p, cfg.integration);
  });
  // Mirrored Simpson integral of each curve must recover the full probability.
  const double h = 5.0 / 200;
  for (std::size_t k = 1; k < table.columns.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const double w = (i == 0 || i + 1 == table.rows.size()) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * table.rows[i][k];
    }
    const double mass = 2.0 * s * h / 3.0;
    if (std::abs(mass - 1.0) > 1e-4) throw CoverageError(mass);
  }
  table.comments = {"fig5: outcome density p(x0p) for Fock input n, vacuum ancilla, t = 1/sqrt(2)",
                    "x0p: 0 to 5, step 0.025 (p is even; the mirrored integral is 1 within 1e-4)"};
  return table;
}

Table fig6(const RunConfig& cfg) {
  const BeamSplitter bs = BeamSplitter::balanced();
  Table table = outcome_figure(cfg, 5.0, 200, "pCp_over_C", [&](int n, double x0p, double c) {
    return kernel_l1(conditional_unnormalized(fock(n), vacuum(), bs, x0p), cfg.integration) / c;
  });
  table.comments = {"fig6: p(x0p) Cp(x0p)/C for Fock input n, vacuum ancilla, t = 1/sqrt(2)",
                    "x0p: 0 to 5, step 0.025"};
  return table;
}

// Average coherence of Fock n behind a balanced splitter. The outcome grid
// doubles the sweep nodes because p(x0p) oscillates for n >= 7.
double fock_average(int n, const RunConfig& cfg) {
  const DensityKernel rho = fock(n);
  const DensityKernel rho0 = vacuum();
  const SweepGrid grid = SweepGrid::for_states(rho, rho0, 2 * cfg.sweep_nodes - 1);
  return average_coherence(rho, rho0, BeamSplitter::balanced(), grid, cfg.integration).value;
}

Table fig7(const RunConfig& cfg) {
  Table table;
  table.comments = {"fig7: average output coherence for Fock input n, vacuum ancilla, t = 1/sqrt(2)",
                    "n: 0 to 10"};
  table.columns = {"n", "Cp_avg"};
  table.rows = sweep(kMaxPhotonNumber + 1, [&](std::size_t n) {
    return std::vector<double>{double(n), fock_average(int(n), cfg)};
  });
  return table;
}

Table fig8(const RunConfig& cfg) {
  Table table;
  table.comments = {"fig8: average output coherence over input coherence for Fock input n,",
                    "vacuum ancilla, t = 1/sqrt(2); n: 0 to 10"};
  table.columns = {"n", "ratio"};
  table.rows = sweep(kMaxPhotonNumber + 1, [&](std::size_t n) {
    const double c = l1_coherence(fock(int(n)), cfg.integration).value;
    return std::vector<double>{double(n), fock_average(int(n), cfg) / c};
  });
  return table;
}

Table fig9(const RunConfig& cfg) {
  Table table;
  table.comments = {"fig9: relative-entropy coherence for a one-photon input, vacuum ancilla",
                    "S_avg: outcome average over conditioned states; S_red: reduced state",
                    "t: 0 to 1, step 0.05"};
  table.columns = {"t", "S_avg", "S_red"};
  const std::vector<double> ts = uniform(0.0, 1.0, 20);
  const SweepGrid grid = single_photon_sweep_grid(cfg.sweep_nodes);
  table.rows = sweep(ts.size(), [&](std::size_t i) {
    const EntropyScanPoint p = single_photon_entropy_scan(ts[i], grid, cfg.integration);
    return std::vector<double>{ts[i], p.average, p.reduced};
  });
  return table;
}

}  // namespace

Table figure_table(std::string_view name, const RunConfig& config) {
  if (name == "fig2") return fig2(config);
  if (name == "fig3") return fig3(config);
  if (name == "fig4") return fig4(config);
  if (name == "fig5") return fig5(config);
  if (name == "fig6") return fig6(config);
  if (name == "fig7") return fig7(config);
  if (name == "fig8") return fig8(config);
  if (name == "fig9") return fig9(config);
  throw DomainError("unknown figure '" + std::string(name) + "' (expected fig2..fig9)");
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (const std::string& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qcoh::cli
