#include "qcoh/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>

#include "qcoh/analytic.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/conditioning.hpp"
#include "qcoh/error.hpp"

namespace qcoh::cli {

namespace {

constexpr double kInf = GaussianSchellParams::kPureCoherenceWidth;
const double kBalanced = 1.0 / std::sqrt(2.0);

struct Outcome {
  double worst;
  bool passed;
};

LawCheck timed(int criterion, std::string law, double tolerance, const std::function<Outcome()>& body) {
  LawCheck check{criterion, std::move(law), tolerance, 0.0, false, 0.0, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = body();
    check.worst_deviation = o.worst;
    check.passed = o.passed;
  } catch (const Error& e) {
    check.worst_deviation = std::numeric_limits<double>::infinity();
    check.note = e.what();
  }
  check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return check;
}

Outcome within(double worst, double tolerance) { return {worst, worst <= tolerance}; }

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

DensityKernel thermal(double nbar) { return gaussian_schell_kernel(thermal_params(nbar)); }
DensityKernel fock(int n) { return pure_kernel(fock_wavefunction(FockIndex(n))); }

struct GaussianCase {
  double t;
  double nbar;
  double nbar0;
};

std::vector<GaussianCase> gaussian_cases() {
  std::vector<GaussianCase> out;
  for (double t : {0.3, kBalanced, 0.9})
    for (double nbar : {0.0, 1.0, 5.0})
      for (double nbar0 : {0.0, 1.0}) out.push_back({t, nbar, nbar0});
  return out;
}

// Splitter the simulation runs with; the laws are always evaluated with BeamSplitter(t).
BeamSplitter simulated(double t, const RunConfig& cfg) {
  return cfg.negative_control ? BeamSplitter::perturbed_for_testing(t) : BeamSplitter(t);
}

struct IdentityCase {
  DensityKernel rho;
  double t;
};

std::vector<IdentityCase> identity_cases() {
  return {{fock(1), kBalanced}, {fock(2), kBalanced}, {thermal(1.0), 0.8}};
}

}  // namespace

std::vector<LawCheck> run_law_checks(const RunConfig& cfg) {
  const IntegrationConfig& ic = cfg.integration;
  const DensityKernel vacuum = fock(0);
  std::vector<LawCheck> checks;

  checks.push_back(timed(1, "Gaussian Schell l1 closed form, 5x5 (sigma, mu) grid", 1e-4, [&] {
    double worst = 0.0;
    for (double s : {0.25, 0.5, 1.0, 1.5, 2.0})
      for (double m : {0.25, 0.5, 1.0, 4.0, kInf}) {
        const GaussianSchellParams p{s, m};
        worst = std::max(worst, rel(l1_coherence(gaussian_schell_kernel(p), ic).value,
                                    analytic::gaussian_l1(p)));
      }
    return within(worst, 1e-4);
  }));

  checks.push_back(timed(2, "thermal law C = sqrt(2 pi / (2 nbar + 1)), nbar in {0, 1, 5, 20}", 1e-4, [&] {
    double worst = 0.0;
    for (double nbar : {0.0, 1.0, 5.0, 20.0})
      worst = std::max(worst, rel(l1_coherence(thermal(nbar), ic).value, analytic::thermal_l1(nbar)));
    return within(worst, 1e-4);
  }));

  checks.push_back(timed(3, "input-output law 1/C'^2 = t^2/C^2 + r^2/C0^2", 1e-4, [&] {
    double worst = 0.0;
    for (const GaussianCase& g : gaussian_cases()) {
      const double expected = analytic::output_l1(analytic::thermal_l1(g.nbar),
                                                  analytic::thermal_l1(g.nbar0), BeamSplitter(g.t));
      for (double x0p : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const double v =
            conditional_coherence(thermal(g.nbar), thermal(g.nbar0), simulated(g.t, cfg), x0p, ic).value;
        worst = std::max(worst, rel(v, expected));
      }
    }
    return within(worst, 1e-4);
  }));

  checks.push_back(timed(3, "outcome independence of C' over x0p in [-2, 2]", 1e-4, [&] {
    double worst = 0.0;
    for (const GaussianCase& g : gaussian_cases()) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (double x0p : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const double v =
            conditional_coherence(thermal(g.nbar), thermal(g.nbar0), simulated(g.t, cfg), x0p, ic).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      worst = std::max(worst, (hi - lo) / lo);
    }
    return within(worst, 1e-4);
  }));

  checks.push_back(timed(4, "coherence gain: sign(C' - C) = sign(C0 - C) (mismatch count)", 0.0, [&] {
    int mismatches = 0;
    for (const GaussianCase& g : gaussian_cases()) {
      if (g.nbar == g.nbar0) continue;
      const double c = l1_coherence(thermal(g.nbar), ic).value;
      const double c0 = l1_coherence(thermal(g.nbar0), ic).value;
      const double cp =
          conditional_coherence(thermal(g.nbar), thermal(g.nbar0), simulated(g.t, cfg), 0.5, ic).value;
      if ((cp > c) != (c0 > c)) ++mismatches;
    }
    return within(mismatches, 0.0);
  }));

  checks.push_back(timed(5, "average l1 coherence = l1 coherence of the reduced state", 1e-3, [&] {
    double worst = 0.0;
    for (const IdentityCase& c : identity_cases()) {
      const SweepGrid grid = SweepGrid::for_states(c.rho, vacuum, cfg.sweep_nodes);
      const BeamSplitter bs(c.t);
      const double avg = average_coherence(c.rho, vacuum, bs, grid, ic).value;
      const double red = l1_coherence(reduced_state(c.rho, vacuum, bs, grid, ic), ic).value;
      worst = std::max(worst, rel(avg, red));
    }
    return within(worst, 1e-3);
  }));

  checks.push_back(timed(6, "one-photon conditioned kernel is rank one, 21x21 grid", 1e-8, [&] {
    const BeamSplitter bs = BeamSplitter::balanced();
    double worst = 0.0;
    for (double x0p : {0.0, 0.5, 1.5}) {
      const DensityKernel k = conditional_unnormalized(fock(1), vacuum, bs, x0p);
      const auto phi = [&](double x) {
        return bs.t() * hermite_function(1, x) * hermite_function(0, x0p) +
               bs.r() * hermite_function(0, x) * hermite_function(1, x0p);
      };
      for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
          const double x = -3.0 + 0.3 * i;
          const double xp = -3.0 + 0.3 * j;
          worst = std::max(worst, std::abs(k(x, xp) - phi(x) * phi(xp)));
        }
    }
    return within(worst, 1e-8);
  }));

  checks.push_back(timed(6, "one-photon outcome density t^2 psi0^2 + r^2 psi1^2", 1e-10, [&] {
    const BeamSplitter bs = BeamSplitter::balanced();
    double worst = 0.0;
    for (double x0p : {0.0, 0.5, 1.5})
      worst = std::max(worst, std::abs(outcome_density(fock(1), vacuum, bs, x0p, ic) -
                                       single_photon_outcome_density(bs, x0p)));
    return within(worst, 1e-10);
  }));

  std::vector<double> fock_l1;
  checks.push_back(timed(7, "Fock l1 coherence closed forms at n = 0, 1", 1e-6, [&] {
    for (int n = 0; n <= 10; ++n) fock_l1.push_back(l1_coherence(fock(n), ic).value);
    const double c0 = std::sqrt(2.0 * std::numbers::pi);
    const double c1 = 4.0 * std::sqrt(2.0 / std::numbers::pi);
    return within(std::max(rel(fock_l1[0], c0), rel(fock_l1[1], c1)), 1e-6);
  }));

  checks.push_back(timed(7, "Fock l1 coherence strictly increasing, n = 0..10 (violations)", 0.0, [&] {
    if (fock_l1.size() != 11) throw Error("Fock coherences unavailable");
    int violations = 0;
    for (int n = 1; n <= 10; ++n)
      if (!(fock_l1[n] > fock_l1[n - 1])) ++violations;
    return within(violations, 0.0);
  }));

  checks.push_back(timed(8, "minimum uncertainty C_X C_Y = 2 pi, sigma in {1/4, 1/2, 1}", 1e-5, [&] {
    double worst = 0.0;
    for (double s : {0.25, 0.5, 1.0}) {
      const WaveFunction psi = gaussian_wavefunction(s);
      const double cx = l1_coherence_pure(psi, ic).value;
      const double cy = l1_coherence_pure(y_quadrature_modulus(psi, 1.0 / (4.0 * s), ic), ic).value;
      worst = std::max(worst, rel(cx * cy, 2.0 * std::numbers::pi));
    }
    return within(worst, 1e-5);
  }));

  std::vector<EntropyScanPoint> scan;
  const SweepGrid photon_grid = single_photon_sweep_grid(cfg.sweep_nodes);
  checks.push_back(timed(9, "relative entropy: average >= reduced on t = 0, 0.1, ..., 1", 1e-4, [&] {
    for (int i = 0; i <= 10; ++i) scan.push_back(single_photon_entropy_scan(0.1 * i, photon_grid, ic));
    double worst = 0.0;
    for (const EntropyScanPoint& p : scan) worst = std::max(worst, p.reduced - p.average);
    return within(worst, 1e-4);
  }));

  checks.push_back(timed(9, "relative entropy: average = reduced at t = 0 and t = 1", 1e-4, [&] {
    if (scan.size() != 11) throw Error("entropy scan unavailable");
    return within(std::max(std::abs(scan.front().average - scan.front().reduced),
                           std::abs(scan.back().average - scan.back().reduced)),
                  1e-4);
  }));

  checks.push_back(timed(9, "relative entropy: average - reduced > 1e-3 at t = 1/sqrt(2)", 1e-3, [&] {
    const EntropyScanPoint p = single_photon_entropy_scan(kBalanced, photon_grid, ic);
    const double gap = p.average - p.reduced;
    return Outcome{gap, gap > 1e-3};
  }));

  checks.push_back(timed(10, "outcome densities integrate to 1", 1e-6, [&] {
    double worst = 0.0;
    for (const GaussianCase& g : gaussian_cases()) {
      const DensityKernel rho = thermal(g.nbar);
      const DensityKernel rho0 = thermal(g.nbar0);
      const SweepGrid grid = SweepGrid::for_states(rho, rho0, cfg.sweep_nodes);
      worst = std::max(worst, std::abs(captured_probability(rho, rho0, simulated(g.t, cfg), grid, ic) - 1.0));
    }
    for (const IdentityCase& c : identity_cases()) {
      const SweepGrid grid = SweepGrid::for_states(c.rho, vacuum, cfg.sweep_nodes);
      worst = std::max(worst, std::abs(captured_probability(c.rho, vacuum, BeamSplitter(c.t), grid, ic) - 1.0));
    }
    for (int i = 0; i <= 10; ++i) {
      const BeamSplitter bs(0.1 * i);
      double mass = 0.0;
      for (std::size_t k = 0; k < photon_grid.size(); ++k)
        mass += photon_grid.weights()[k] * single_photon_outcome_density(bs, photon_grid.points()[k]);
      worst = std::max(worst, std::abs(mass - 1.0));
    }
    return within(worst, 1e-6);
  }));

  return checks;
}

void print_report(const std::vector<LawCheck>& checks, std::ostream& out) {
  int passed = 0;
  char line[512];
  for (const LawCheck& c : checks) {
    passed += c.passed;
    std::snprintf(line, sizeof line, "[%s] %2d  %-72s tol %-8.3g worst %-12.6g %7.2f s\n",
                  c.passed ? "PASS" : "FAIL", c.criterion, c.law.c_str(), c.tolerance,
                  c.worst_deviation, c.seconds);
    out << line;
    if (!c.note.empty()) out << "      error: " << c.note << '\n';
  }
  out << passed << "/" << checks.size() << " law checks passed\n";
}

}  // namespace qcoh::cli
