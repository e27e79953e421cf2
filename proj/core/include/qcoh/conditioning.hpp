#pragma once

#include <span>
#include <vector>

#include "qcoh/coherence.hpp"
#include "qcoh/numquad.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

/// Lossless beam splitter with real transmission t and reflection r = sqrt(1 - t^2).
///
/// Output quadratures: X' = t X - r X0 and X0' = t X0 + r X.
class BeamSplitter {
 public:
  /// Throws DomainError unless 0 <= t <= 1.
  explicit BeamSplitter(double t);

  static BeamSplitter balanced();

  /// Splitter with r = 1 - t, which breaks t^2 + r^2 = 1. Exists only so
  /// verification runs can check that a wrong splitter is detected.
  static BeamSplitter perturbed_for_testing(double t);

  double t() const noexcept { return t_; }
  double r() const noexcept { return r_; }

 private:
  BeamSplitter(double t, double r) : t_(t), r_(r) {}

  double t_;
  double r_;
};

/// Outcomes with p(x0') below this cannot be conditioned on.
inline constexpr double kDensityFloor = 1e-10;
inline constexpr int kDefaultSweepNodes = 129;
/// Largest probability mass an outcome grid may miss.
inline constexpr double kCoverageTolerance = 1e-6;

/// Quadrature grid over measurement outcomes x0'.
class SweepGrid {
 public:
  /// Throws DomainError unless points strictly increase and weights are positive.
  SweepGrid(std::vector<double> points, std::vector<double> weights);

  /// Gauss-Legendre nodes on [-half_width, half_width].
  static SweepGrid gauss_legendre(double half_width, int nodes = kDefaultSweepNodes);

  /// Default grid for a pair of input states: half width 6 * max(scales).
  static SweepGrid for_states(const DensityKernel& rho, const DensityKernel& rho0,
                              int nodes = kDefaultSweepNodes);

  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

struct ConditionalResult {
  double x0_prime;
  /// Outcome probability density p(x0').
  double density;
  /// Normalized conditioned state rho'(x0').
  DensityKernel kernel;
  /// Unnormalized conditioned kernel rho'_u(x0'); its trace is `density`.
  DensityKernel unnormalized;
};

/// (x, x') -> rho(t x + r x0', t x' + r x0') * rho0(t x0' - r x, t x0' - r x').
/// The returned kernel is not unit-trace; its trace is p(x0').
DensityKernel conditional_unnormalized(const DensityKernel& rho, const DensityKernel& rho0,
                                       const BeamSplitter& bs, double x0_prime);

double outcome_density(const DensityKernel& rho, const DensityKernel& rho0, const BeamSplitter& bs,
                       double x0_prime, const IntegrationConfig& config);

/// Throws NegligibleOutcomeError when p(x0') < kDensityFloor.
ConditionalResult conditional_state(const DensityKernel& rho, const DensityKernel& rho0,
                                    const BeamSplitter& bs, double x0_prime,
                                    const IntegrationConfig& config);

/// l1 coherence of the normalized conditioned state.
CoherenceValue conditional_coherence(const DensityKernel& rho, const DensityKernel& rho0,
                                     const BeamSplitter& bs, double x0_prime,
                                     const IntegrationConfig& config);

/// l1 coherence of the unnormalized conditioned kernel, p(x0') * C'(x0').
/// Defined for every outcome, including negligible ones.
CoherenceValue unnormalized_conditional_coherence(const DensityKernel& rho,
                                                  const DensityKernel& rho0,
                                                  const BeamSplitter& bs, double x0_prime,
                                                  const IntegrationConfig& config);

/// Sum of grid-weighted outcome densities.
double captured_probability(const DensityKernel& rho, const DensityKernel& rho0,
                            const BeamSplitter& bs, const SweepGrid& grid,
                            const IntegrationConfig& config);

/// Outcome-averaged coherence, integral of p(x0') C'(x0') over x0'.
/// Throws CoverageError when the grid misses more than kCoverageTolerance of the mass.
CoherenceValue average_coherence(const DensityKernel& rho, const DensityKernel& rho0,
                                 const BeamSplitter& bs, const SweepGrid& grid,
                                 const IntegrationConfig& config);

/// State of the unmeasured output mode, the x0'-integral of rho'_u(x0').
/// The kernel keeps the grid nodes with t x0' and r x0' precomputed and sums
/// the unnormalized kernels on demand. Throws CoverageError as above.
DensityKernel reduced_state(const DensityKernel& rho, const DensityKernel& rho0,
                            const BeamSplitter& bs, const SweepGrid& grid,
                            const IntegrationConfig& config);

/// Outcome density for a one-photon input and vacuum ancilla:
/// t^2 psi0(x0')^2 + r^2 psi1(x0')^2.
double single_photon_outcome_density(const BeamSplitter& bs, double x0_prime);

/// Normalized conditioned wavefunction for a one-photon input and vacuum ancilla,
/// (t psi1(x) psi0(x0') + r psi0(x) psi1(x0')) / sqrt(p(x0')).
/// Throws NegligibleOutcomeError below the density floor.
WaveFunction single_photon_conditional_wavefunction(const BeamSplitter& bs, double x0_prime);

/// Default outcome grid for the one-photon scan.
SweepGrid single_photon_sweep_grid(int nodes = kDefaultSweepNodes);

struct EntropyScanPoint {
  /// Outcome average of the relative-entropy coherence of the conditioned states.
  double average;
  /// Relative-entropy coherence of the reduced state r^2|0><0| + t^2|1><1|.
  double reduced;
};

EntropyScanPoint single_photon_entropy_scan(double t, const SweepGrid& grid,
                                            const IntegrationConfig& config);
EntropyScanPoint single_photon_entropy_scan(const BeamSplitter& bs, const SweepGrid& grid,
                                            const IntegrationConfig& config);

}  // namespace qcoh
