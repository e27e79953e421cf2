#include "qcoh/conditioning.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "qcoh/analytic.hpp"
#include "qcoh/error.hpp"

namespace qcoh {
namespace {

const double kBalanced = 1.0 / std::sqrt(2.0);

// Independent references from adaptive scipy quadrature split at every sign change.
constexpr double kFock1Average = 2.527908957435;
constexpr double kFock2Average = 2.532293171201;
constexpr double kFock1Reduced = 2.061369583262;
constexpr double kFock2Reduced = 1.916443539361;

DensityKernel thermal(double nbar) { return gaussian_schell_kernel(thermal_params(nbar)); }
DensityKernel vacuum() { return thermal(0.0); }
DensityKernel fock(int n) { return pure_kernel(fock_wavefunction(FockIndex(n))); }

double psi(int n, double x) { return oracle::fock_closed_form(n, x); }

TEST(BeamSplitterTest, ReflectionFromTransmission) {
  for (double t : {0.0, 0.3, kBalanced, 1.0}) {
    const BeamSplitter bs(t);
    EXPECT_NEAR(bs.t() * bs.t() + bs.r() * bs.r(), 1.0, 1e-15);
    EXPECT_GE(bs.r(), 0.0);
  }
  EXPECT_THROW(BeamSplitter(-0.1), DomainError);
  EXPECT_THROW(BeamSplitter(1.1), DomainError);
  EXPECT_NEAR(BeamSplitter::perturbed_for_testing(0.6).r(), 0.4, 1e-15);
}

TEST(SweepGridTest, Validation) {
  EXPECT_THROW(SweepGrid({}, {}), DomainError);
  EXPECT_THROW(SweepGrid({0.0, 0.0}, {1.0, 1.0}), DomainError);
  EXPECT_THROW(SweepGrid({0.0, 1.0}, {1.0, 0.0}), DomainError);
  const SweepGrid g = SweepGrid::gauss_legendre(3.0, 9);
  double total = 0.0;
  for (double w : g.weights()) total += w;
  EXPECT_NEAR(total, 6.0, 1e-13);
}

TEST(ConditionalKernelTest, TransparentSplitter) {
  const DensityKernel rho = thermal(1.0);
  const DensityKernel rho0 = vacuum();
  const DensityKernel k = conditional_unnormalized(rho, rho0, BeamSplitter(1.0), 0.4);
  for (double x : {-1.0, 0.3})
    for (double xp : {-0.2, 1.1}) EXPECT_NEAR(k(x, xp), rho(x, xp) * rho0(0.4, 0.4), 1e-15);
  EXPECT_NEAR(outcome_density(rho, rho0, BeamSplitter(1.0), 0.4, {}), rho0(0.4, 0.4), 1e-10);
  const ConditionalResult c = conditional_state(rho, rho0, BeamSplitter(1.0), 0.4, {});
  for (double x : {-1.0, 0.3})
    for (double xp : {-0.2, 1.1}) EXPECT_NEAR(c.kernel(x, xp), rho(x, xp), 1e-10);
  EXPECT_NEAR(conditional_coherence(rho, rho0, BeamSplitter(1.0), 0.4, {}).value,
              oracle::kThermal1L1, 1e-7);
}

TEST(ConditionalKernelTest, SymmetricForSymmetricInputs) {
  const DensityKernel k = conditional_unnormalized(thermal(2.0), thermal(0.5), BeamSplitter(0.6), 0.7);
  EXPECT_DOUBLE_EQ(k(0.3, -1.2), k(-1.2, 0.3));
}

TEST(ConditionalKernelTest, OnePhotonIsRankOne) {
  // Unnormalized kernel equals phi(x) phi(x') with phi = t psi1 psi0(x0') + r psi0 psi1(x0').
  const BeamSplitter bs = BeamSplitter::balanced();
  for (double x0p : {0.0, 0.5, 1.5}) {
    const DensityKernel k = conditional_unnormalized(fock(1), vacuum(), bs, x0p);
    const auto phi = [&](double x) {
      return bs.t() * psi(1, x) * psi(0, x0p) + bs.r() * psi(0, x) * psi(1, x0p);
    };
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double x = -3.0 + 0.3 * i;
        const double xp = -3.0 + 0.3 * j;
        EXPECT_NEAR(k(x, xp), phi(x) * phi(xp), 1e-8) << x0p << " " << x << " " << xp;
      }
    }
    const double p = single_photon_outcome_density(bs, x0p);
    EXPECT_NEAR(outcome_density(fock(1), vacuum(), bs, x0p, {}), p, 1e-10);
    EXPECT_NEAR(p, 0.5 * (psi(0, x0p) * psi(0, x0p) + psi(1, x0p) * psi(1, x0p)), 1e-15);
  }
}

TEST(ConditionalStateTest, OnePhotonAtOriginIsOnePhoton) {
  const BeamSplitter bs = BeamSplitter::balanced();
  const ConditionalResult c = conditional_state(fock(1), vacuum(), bs, 0.0, {});
  for (double x : {-1.5, -0.4, 0.0, 0.8, 2.0}) EXPECT_NEAR(c.kernel(x, x), psi(1, x) * psi(1, x), 1e-10);
  EXPECT_NEAR(conditional_coherence(fock(1), vacuum(), bs, 0.0, {}).value, oracle::kFock1L1, 1e-7);
  EXPECT_NEAR(
      l1_coherence_pure(single_photon_conditional_wavefunction(bs, 0.0), {}).value / oracle::kFock1L1,
      1.0, 1e-9);
}

TEST(ConditionalStateTest, PureGaussianStaysPure) {
  for (double t : {0.3, 0.8}) {
    for (double x0p : {-1.0, 0.7}) {
      const ConditionalResult c = conditional_state(vacuum(), vacuum(), BeamSplitter(t), x0p, {});
      EXPECT_NEAR(kernel_trace(c.kernel, {}), 1.0, 1e-9);
      EXPECT_NEAR(kernel_purity(c.kernel, {}), 1.0, 1e-6);
    }
  }
}

TEST(ConditionalStateTest, NegligibleOutcome) {
  try {
    conditional_state(vacuum(), vacuum(), BeamSplitter(0.5), 4.0, {});
    FAIL();
  } catch (const NegligibleOutcomeError& e) {
    EXPECT_DOUBLE_EQ(e.x0_prime(), 4.0);
    EXPECT_LT(e.density(), kDensityFloor);
  }
  EXPECT_THROW(single_photon_conditional_wavefunction(BeamSplitter(0.5), 5.0),
               NegligibleOutcomeError);
}

TEST(ConditionalCoherenceTest, ThermalBalancedIsRootPi) {
  for (double x0p : {-1.0, 0.5, 2.0}) {
    EXPECT_NEAR(conditional_coherence(thermal(1.0), vacuum(), BeamSplitter::balanced(), x0p, {}).value,
                std::sqrt(std::numbers::pi), 1e-4 * std::sqrt(std::numbers::pi));
  }
}

struct GaussianCase {
  double t;
  double nbar;
  double nbar0;
};

std::vector<GaussianCase> gaussian_grid() {
  std::vector<GaussianCase> out;
  for (double t : {0.3, kBalanced, 0.9})
    for (double nbar : {0.0, 1.0, 5.0})
      for (double nbar0 : {0.0, 1.0}) out.push_back({t, nbar, nbar0});
  return out;
}

TEST(ConditioningProperty, InputOutputLawAndOutcomeIndependence) {
  for (const GaussianCase& g : gaussian_grid()) {
    const BeamSplitter bs(g.t);
    const double c = analytic::thermal_l1(g.nbar);
    const double c0 = analytic::thermal_l1(g.nbar0);
    const double expected = analytic::output_l1(c, c0, bs);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double x0p : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const double v = conditional_coherence(thermal(g.nbar), thermal(g.nbar0), bs, x0p, {}).value;
      EXPECT_NEAR(v, expected, 1e-4 * expected) << g.t << " " << g.nbar << " " << g.nbar0 << " " << x0p;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_LT((hi - lo) / expected, 1e-4);
  }
}

TEST(ConditioningProperty, CoherenceGainCriterion) {
  for (const GaussianCase& g : gaussian_grid()) {
    if (g.nbar == g.nbar0) continue;
    const double c = l1_coherence(thermal(g.nbar), {}).value;
    const double c0 = l1_coherence(thermal(g.nbar0), {}).value;
    const double cp = conditional_coherence(thermal(g.nbar), thermal(g.nbar0), BeamSplitter(g.t), 0.3, {}).value;
    EXPECT_EQ(cp > c, c0 > c) << g.t << " " << g.nbar << " " << g.nbar0;
  }
}

TEST(ConditioningProperty, AmplificationLimit) {
  const double t = 0.5;
  const double c = analytic::thermal_l1(100.0);
  const double cp = conditional_coherence(thermal(100.0), vacuum(), BeamSplitter(t), 0.0, {}).value;
  const double ratio = cp / (c / t);
  EXPECT_GE(ratio, 0.97);
  EXPECT_LE(ratio, 1.0);
}

TEST(ConditioningProperty, LockingLimit) {
  const BeamSplitter bs(std::sqrt(0.75));
  ASSERT_NEAR(bs.r(), 0.5, 1e-15);
  const double c0 = analytic::thermal_l1(100.0);
  const double cp = conditional_coherence(vacuum(), thermal(100.0), bs, 0.0, {}).value;
  EXPECT_LE(cp, c0 / bs.r());
  EXPECT_GE(cp, 0.95 * c0 / bs.r());
}

TEST(ConditioningProperty, IncoherentInputLimit) {
  const double c = analytic::thermal_l1(200.0);
  for (double t : {0.5, 0.8}) {
    const double cp = conditional_coherence(thermal(200.0), vacuum(), BeamSplitter(t), 0.0, {}).value;
    EXPECT_LE(cp, c / t * (1.0 + 1e-3)) << t;
  }
}

TEST(ConditioningProperty, OutcomeDensityNormalized) {
  struct Case {
    DensityKernel rho;
    DensityKernel rho0;
    double t;
  };
  const Case cases[] = {{thermal(1.0), vacuum(), 0.8},     {fock(1), vacuum(), kBalanced},
                        {fock(2), vacuum(), kBalanced},    {thermal(5.0), thermal(1.0), 0.3},
                        {vacuum(), thermal(100.0), 0.866}, {fock(10), vacuum(), kBalanced}};
  for (const Case& c : cases) {
    const SweepGrid grid = SweepGrid::for_states(c.rho, c.rho0, 2 * kDefaultSweepNodes - 1);
    EXPECT_NEAR(captured_probability(c.rho, c.rho0, BeamSplitter(c.t), grid, {}), 1.0, 1e-6) << c.t;
  }
}

TEST(AverageCoherenceTest, TransparentSplitter) {
  const DensityKernel rho = thermal(1.0);
  const DensityKernel rho0 = vacuum();
  const CoherenceValue a =
      average_coherence(rho, rho0, BeamSplitter(1.0), SweepGrid::for_states(rho, rho0), {});
  EXPECT_NEAR(a.value, oracle::kThermal1L1, 1e-6);
}

TEST(AverageCoherenceTest, GaussianAverageEqualsConditional) {
  const DensityKernel rho = thermal(1.0);
  const DensityKernel rho0 = vacuum();
  const BeamSplitter bs(0.8);
  const double avg = average_coherence(rho, rho0, bs, SweepGrid::for_states(rho, rho0), {}).value;
  const double cond = conditional_coherence(rho, rho0, bs, 0.4, {}).value;
  EXPECT_NEAR(avg, cond, 1e-4 * cond);
}

TEST(AverageCoherenceTest, CoverageErrorReportsMass) {
  try {
    average_coherence(thermal(1.0), vacuum(), BeamSplitter(0.8), SweepGrid::gauss_legendre(1.0, 33), {});
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_LT(e.captured_mass(), 0.9);
  }
}

TEST(AverageCoherenceTest, FockAverageMatchesIndependentReference) {
  const BeamSplitter bs = BeamSplitter::balanced();
  EXPECT_NEAR(average_coherence(fock(1), vacuum(), bs, SweepGrid::for_states(fock(1), vacuum()), {}).value,
              kFock1Average, 1e-6);
  EXPECT_NEAR(average_coherence(fock(2), vacuum(), bs, SweepGrid::for_states(fock(2), vacuum()), {}).value,
              kFock2Average, 1e-6);
}

TEST(ReducedStateTest, TransparentSplitter) {
  const DensityKernel rho = thermal(1.0);
  const DensityKernel rho0 = vacuum();
  const DensityKernel red = reduced_state(rho, rho0, BeamSplitter(1.0), SweepGrid::for_states(rho, rho0), {});
  for (double x : {-1.0, 0.0, 0.6})
    for (double xp : {-0.5, 1.3}) EXPECT_NEAR(red(x, xp), rho(x, xp), 1e-8);
}

TEST(ReducedStateTest, OnePhotonIsFockDiagonal) {
  for (double t : {0.3, kBalanced, 0.9}) {
    const BeamSplitter bs(t);
    const DensityKernel red = reduced_state(fock(1), vacuum(), bs, SweepGrid::for_states(fock(1), vacuum()), {});
    const double r2 = bs.r() * bs.r();
    const double t2 = t * t;
    for (double x : {-2.0, -0.5, 0.0, 0.9}) {
      for (double xp : {-1.1, 0.4, 1.7}) {
        const double expected = r2 * psi(0, x) * psi(0, xp) + t2 * psi(1, x) * psi(1, xp);
        EXPECT_NEAR(red(x, xp), expected, 1e-8) << t << " " << x << " " << xp;
      }
      EXPECT_NEAR(red(x, x), r2 * psi(0, x) * psi(0, x) + t2 * psi(1, x) * psi(1, x), 1e-8);
    }
  }
}

TEST(ReducedStateTest, ThermalAverageEqualsReducedCoherence) {
  // Thermal input and vacuum ancilla reduce to a thermal state with mean t^2 nbar.
  const DensityKernel rho = thermal(1.0);
  const DensityKernel rho0 = vacuum();
  const BeamSplitter bs(0.8);
  const SweepGrid grid = SweepGrid::for_states(rho, rho0);
  const double red = l1_coherence(reduced_state(rho, rho0, bs, grid, {}), {}).value;
  const double avg = average_coherence(rho, rho0, bs, grid, {}).value;
  const double expected = analytic::thermal_l1(0.64);
  EXPECT_NEAR(red, expected, 1e-6 * expected);
  EXPECT_NEAR(avg, expected, 1e-6 * expected);
}

TEST(ReducedStateTest, FockAverageExceedsReducedCoherence) {
  // For Fock inputs the unnormalized conditioned kernels change sign differently
  // from outcome to outcome, so the average of |.| exceeds |.| of the average.
  const BeamSplitter bs = BeamSplitter::balanced();
  const double red1 =
      l1_coherence(reduced_state(fock(1), vacuum(), bs, SweepGrid::for_states(fock(1), vacuum()), {}), {})
          .value;
  EXPECT_NEAR(red1, kFock1Reduced, 1e-6);
  const double red2 =
      l1_coherence(reduced_state(fock(2), vacuum(), bs, SweepGrid::for_states(fock(2), vacuum()), {}), {})
          .value;
  EXPECT_NEAR(red2, kFock2Reduced, 1e-6);
  EXPECT_GT(kFock1Average, red1);
  EXPECT_GT(kFock2Average, red2);
}

TEST(EntropyScanTest, Endpoints) {
  const SweepGrid grid = single_photon_sweep_grid();
  const EntropyScanPoint at0 = single_photon_entropy_scan(0.0, grid, {});
  EXPECT_NEAR(at0.average, oracle::kEntropyPsi0, 1e-6);
  EXPECT_NEAR(at0.reduced, oracle::kEntropyPsi0, 1e-9);
  const EntropyScanPoint at1 = single_photon_entropy_scan(1.0, grid, {});
  EXPECT_NEAR(at1.average, oracle::kEntropyPsi1, 1e-6);
  EXPECT_NEAR(at1.reduced, oracle::kEntropyPsi1, 1e-9);
}

TEST(EntropyScanTest, AverageAboveReduced) {
  const SweepGrid grid = single_photon_sweep_grid();
  for (int i = 1; i < 10; ++i) {
    const EntropyScanPoint p = single_photon_entropy_scan(0.1 * i, grid, {});
    EXPECT_GT(p.average, p.reduced) << 0.1 * i;
  }
  const EntropyScanPoint mid = single_photon_entropy_scan(kBalanced, grid, {});
  EXPECT_NEAR(mid.reduced, oracle::kEntropyHalfMixture, 1e-8);
  EXPECT_GT(mid.average - mid.reduced, 1e-3);
}

}  // namespace
}  // namespace qcoh
