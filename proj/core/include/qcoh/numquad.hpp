#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcoh {

/// Truncation and error-control settings for the adaptive Gauss-Legendre engine.
///
/// Integrals over the real line are truncated to [-half_width, half_width].
/// The domain is first cut into panels no wider than `kMaxInitialPanelWidth`,
/// then the panel with the largest error estimate is bisected until the
/// summed estimate drops below max(abs_tol, rel_tol * |value|). A panel
/// `max_depth` bisections below its initial panel is never split again.
struct IntegrationConfig {
  double half_width = 8.0;
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 14;
  int base_order = 16;

  /// Throws DomainError when a field violates its bound.
  void validate() const;

  /// Copy whose half_width is at least 12 * max(scale, 1/2). A Gaussian amplitude
  /// exp(-x^2 / (4 s^2)) is below 1e-15 there, and the bound is never below 6 * max(scale, 1).
  IntegrationConfig widened_for(double scale) const;
};

inline constexpr double kMaxInitialPanelWidth = 2.0;

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
  /// False when refinement stopped at max_depth before meeting the tolerance.
  bool converged = true;
};

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Integral of f over [-L, L].
QuadResult integrate_1d(const Integrand1D& f, const IntegrationConfig& config);

/// Same, with extra panel breakpoints (points outside (-L, L) are ignored).
/// Kinks and narrow peaks located at a breakpoint cost almost nothing.
QuadResult integrate_1d(const Integrand1D& f, const IntegrationConfig& config,
                        std::span<const double> breakpoints);

/// Integral of f over [-L, L]^2 as an iterated adaptive integral.
///
/// The inner integral over x' always carries a breakpoint at x' = x, where
/// every density kernel of interest concentrates its off-diagonal weight.
/// The reported error estimate adds the outer estimate and the
/// quadrature-weighted inner estimates.
QuadResult integrate_2d(const Integrand2D& f, const IntegrationConfig& config);

/// Integral of |f| over [-L, L]. Sign changes of f between sampled Gauss
/// nodes are bracketed and solved for; each root becomes a panel breakpoint,
/// so the |.| kinks never sit inside a panel.
QuadResult integrate_1d_abs(const Integrand1D& f, const IntegrationConfig& config,
                            std::span<const double> breakpoints = {});

/// Integral of |f| over [-L, L]^2. Same iteration as integrate_2d, with the
/// inner integrals split at the roots of f(x, .). `outer_breakpoints` are
/// known kink locations of the outer integrand.
QuadResult integrate_2d_abs(const Integrand2D& f, const IntegrationConfig& config,
                            std::span<const double> outer_breakpoints = {});

/// Roots of f in (-L, L) bracketed between the Gauss nodes of the initial panels.
/// Pairs of roots closer than the node spacing may be missed.
std::vector<double> sign_change_roots(const Integrand1D& f, const IntegrationConfig& config);

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussLegendreRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

GaussLegendreRule gauss_legendre(int order);

}  // namespace qcoh
