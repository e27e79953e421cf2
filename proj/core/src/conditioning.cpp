#include "qcoh/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcoh/error.hpp"

namespace qcoh {

BeamSplitter::BeamSplitter(double t) : t_(t), r_(0.0) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("BeamSplitter: transmission must lie in [0, 1]");
  r_ = std::sqrt(std::max(0.0, 1.0 - t * t));
}

BeamSplitter BeamSplitter::balanced() { return BeamSplitter(1.0 / std::sqrt(2.0)); }

BeamSplitter BeamSplitter::perturbed_for_testing(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("BeamSplitter: transmission must lie in [0, 1]");
  return BeamSplitter(t, 1.0 - t);
}

SweepGrid::SweepGrid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size())
    throw DomainError("SweepGrid: points and weights must be nonempty and of equal length");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw DomainError("SweepGrid: weights must be positive");
    if (i > 0 && !(points_[i] > points_[i - 1]))
      throw DomainError("SweepGrid: points must be strictly increasing");
  }
}

SweepGrid SweepGrid::gauss_legendre(double half_width, int nodes) {
  if (!(half_width > 0.0)) throw DomainError("SweepGrid: half_width must be positive");
  const GaussLegendreRule rule = qcoh::gauss_legendre(nodes);
  std::vector<double> points(rule.nodes.size());
  std::vector<double> weights(rule.nodes.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i] = half_width * rule.nodes[i];
    weights[i] = half_width * rule.weights[i];
  }
  return SweepGrid(std::move(points), std::move(weights));
}

SweepGrid SweepGrid::for_states(const DensityKernel& rho, const DensityKernel& rho0, int nodes) {
  return gauss_legendre(6.0 * std::max(rho.scale_hint(), rho0.scale_hint()), nodes);
}

namespace {

// Half width containing the diagonal of rho'_u(x0'): the rho factor confines x
// to c1 +- 6 s / t and the rho0 factor to c2 +- 6 s0 / r.
double conditional_scale(double s, double s0, const BeamSplitter& bs, double x0p) {
  const double t = bs.t();
  const double r = bs.r();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double lo = -kInf;
  double hi = kInf;
  if (t > 0.0) {
    const double c = -r * x0p / t;
    lo = std::max(lo, c - 6.0 * s / t);
    hi = std::min(hi, c + 6.0 * s / t);
  }
  if (r > 0.0) {
    const double c = t * x0p / r;
    lo = std::max(lo, c - 6.0 * s0 / r);
    hi = std::min(hi, c + 6.0 * s0 / r);
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) return std::max(s, s0);
  return std::max(std::max(std::abs(lo), std::abs(hi)) / 6.0, 1e-3);
}

void check_coverage(double mass) {
  if (std::abs(1.0 - mass) > kCoverageTolerance) throw CoverageError(mass);
}

}  // namespace

DensityKernel conditional_unnormalized(const DensityKernel& rho, const DensityKernel& rho0,
                                       const BeamSplitter& bs, double x0_prime) {
  const double t = bs.t();
  const double r = bs.r();
  const double shift = r * x0_prime;
  const double centre0 = t * x0_prime;
  const double scale = conditional_scale(rho.scale_hint(), rho0.scale_hint(), bs, x0_prime);
  if (rho.rank_one_factor() && rho0.rank_one_factor()) {
    // psi(t x + r x0') psi0(t x0' - r x) is the factor of the conditioned kernel.
    auto phi = [g = rho.rank_one_factor()->function(), g0 = rho0.rank_one_factor()->function(), t,
                r, shift, centre0](double x) {
      const double a = g(t * x + shift);
      if (a == 0.0) return 0.0;
      return a * g0(centre0 - r * x);
    };
    return DensityKernel(WaveFunction(std::move(phi), scale, "conditioned"));
  }
  auto eval = [f = rho.function(), f0 = rho0.function(), t, r, shift, centre0](double x,
                                                                               double xp) {
    const double a = f(t * x + shift, t * xp + shift);
    if (a == 0.0) return 0.0;
    return a * f0(centre0 - r * x, centre0 - r * xp);
  };
  return DensityKernel(std::move(eval), scale, rho.is_pure() && rho0.is_pure());
}

double outcome_density(const DensityKernel& rho, const DensityKernel& rho0, const BeamSplitter& bs,
                       double x0_prime, const IntegrationConfig& config) {
  return std::max(0.0, kernel_trace(conditional_unnormalized(rho, rho0, bs, x0_prime), config));
}

ConditionalResult conditional_state(const DensityKernel& rho, const DensityKernel& rho0,
                                    const BeamSplitter& bs, double x0_prime,
                                    const IntegrationConfig& config) {
  DensityKernel unnormalized = conditional_unnormalized(rho, rho0, bs, x0_prime);
  const double p = std::max(0.0, kernel_trace(unnormalized, config));
  if (p < kDensityFloor) throw NegligibleOutcomeError(x0_prime, p);
  DensityKernel kernel = unnormalized.scaled(1.0 / p);
  return ConditionalResult{x0_prime, p, std::move(kernel), std::move(unnormalized)};
}

CoherenceValue conditional_coherence(const DensityKernel& rho, const DensityKernel& rho0,
                                     const BeamSplitter& bs, double x0_prime,
                                     const IntegrationConfig& config) {
  const ConditionalResult c = conditional_state(rho, rho0, bs, x0_prime, config);
  return l1_coherence(c.kernel, config);
}

CoherenceValue unnormalized_conditional_coherence(const DensityKernel& rho,
                                                  const DensityKernel& rho0,
                                                  const BeamSplitter& bs, double x0_prime,
                                                  const IntegrationConfig& config) {
  return l1_coherence(conditional_unnormalized(rho, rho0, bs, x0_prime), config);
}

namespace {

// Rank-one kernels use (integral |phi|)^2, everything else the double integral.
CoherenceValue unnormalized_coherence_fast(const DensityKernel& rho, const DensityKernel& rho0,
                                           const BeamSplitter& bs, double x0_prime,
                                           const IntegrationConfig& config) {
  const DensityKernel k = conditional_unnormalized(rho, rho0, bs, x0_prime);
  if (const auto& phi = k.rank_one_factor()) {
    const IntegrationConfig cfg = config.widened_for(k.scale_hint());
    const QuadResult r = integrate_1d_abs(phi->function(), cfg);
    return {r.value * r.value, 2.0 * r.value * r.error_estimate};
  }
  return l1_coherence(k, config);
}

}  // namespace

double captured_probability(const DensityKernel& rho, const DensityKernel& rho0,
                            const BeamSplitter& bs, const SweepGrid& grid,
                            const IntegrationConfig& config) {
  double mass = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    mass += grid.weights()[k] * outcome_density(rho, rho0, bs, grid.points()[k], config);
  return mass;
}

CoherenceValue average_coherence(const DensityKernel& rho, const DensityKernel& rho0,
                                 const BeamSplitter& bs, const SweepGrid& grid,
                                 const IntegrationConfig& config) {
  check_coverage(captured_probability(rho, rho0, bs, grid, config));
  CoherenceValue total;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const CoherenceValue c = unnormalized_coherence_fast(rho, rho0, bs, grid.points()[k], config);
    total.value += grid.weights()[k] * c.value;
    total.error_estimate += grid.weights()[k] * c.error_estimate;
  }
  return total;
}

DensityKernel reduced_state(const DensityKernel& rho, const DensityKernel& rho0,
                            const BeamSplitter& bs, const SweepGrid& grid,
                            const IntegrationConfig& config) {
  check_coverage(captured_probability(rho, rho0, bs, grid, config));
  struct Node {
    double weight;
    double shift;    // r x0'
    double centre0;  // t x0'
  };
  std::vector<Node> nodes;
  nodes.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x0p = grid.points()[k];
    nodes.push_back({grid.weights()[k], bs.r() * x0p, bs.t() * x0p});
  }
  const double t = bs.t();
  const double r = bs.r();
  auto eval = [f = rho.function(), f0 = rho0.function(), nodes = std::move(nodes), t, r](
                  double x, double xp) {
    double sum = 0.0;
    for (const Node& n : nodes) {
      const double a = f(t * x + n.shift, t * xp + n.shift);
      if (a == 0.0) continue;
      sum += n.weight * a * f0(n.centre0 - r * x, n.centre0 - r * xp);
    }
    return sum;
  };
  const bool pure = (r == 0.0 && rho.is_pure()) || (t == 0.0 && rho0.is_pure());
  return DensityKernel(std::move(eval), std::max(rho.scale_hint(), rho0.scale_hint()), pure);
}

double single_photon_outcome_density(const BeamSplitter& bs, double x0_prime) {
  const double a = bs.t() * hermite_function(0, x0_prime);
  const double b = bs.r() * hermite_function(1, x0_prime);
  return a * a + b * b;
}

WaveFunction single_photon_conditional_wavefunction(const BeamSplitter& bs, double x0_prime) {
  const double p = single_photon_outcome_density(bs, x0_prime);
  if (p < kDensityFloor) throw NegligibleOutcomeError(x0_prime, p);
  const double norm = 1.0 / std::sqrt(p);
  const double c1 = norm * bs.t() * hermite_function(0, x0_prime);
  const double c0 = norm * bs.r() * hermite_function(1, x0_prime);
  return WaveFunction(
      [c0, c1](double x) { return c1 * hermite_function(1, x) + c0 * hermite_function(0, x); },
      std::sqrt(2.0), "conditioned-single-photon");
}

SweepGrid single_photon_sweep_grid(int nodes) {
  return SweepGrid::gauss_legendre(6.0 * std::sqrt(2.0), nodes);
}

EntropyScanPoint single_photon_entropy_scan(double t, const SweepGrid& grid,
                                            const IntegrationConfig& config) {
  return single_photon_entropy_scan(BeamSplitter(t), grid, config);
}

EntropyScanPoint single_photon_entropy_scan(const BeamSplitter& bs, const SweepGrid& grid,
                                            const IntegrationConfig& config) {
  double mass = 0.0;
  double average = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x0p = grid.points()[k];
    const double p = single_photon_outcome_density(bs, x0p);
    mass += grid.weights()[k] * p;
    // Outcomes below the floor carry at most floor * S of weight.
    if (p < kDensityFloor) continue;
    const double s =
        rel_entropy_coherence_pure(single_photon_conditional_wavefunction(bs, x0p), config);
    average += grid.weights()[k] * p * s;
  }
  check_coverage(mass);
  const double r2 = bs.r() * bs.r();
  const double t2 = bs.t() * bs.t();
  const FockMixture reduced({{FockIndex(0), r2}, {FockIndex(1), t2}});
  return EntropyScanPoint{average, rel_entropy_coherence_fock_mixture(reduced, config)};
}

}  // namespace qcoh
