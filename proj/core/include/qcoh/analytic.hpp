#pragma once

#include "qcoh/conditioning.hpp"
#include "qcoh/states.hpp"

namespace qcoh::analytic {

enum class QuadratureAxis { X, Y };

/// Closed-form l1 coherence of a Gaussian Schell state, 2 sqrt(2 pi) sigma mu / sqrt(2 sigma^2 + mu^2).
/// The pure case mu = inf returns the exact limit 2 sqrt(2 pi) sigma.
double gaussian_l1(const GaussianSchellParams& params);

/// Closed-form purity mu / sqrt(2 sigma^2 + mu^2) (1 for mu = inf).
double gaussian_purity(const GaussianSchellParams& params);

/// sqrt(2 pi / (2 n_bar + 1)). Throws DomainError for n_bar < 0.
double thermal_l1(double n_bar);

/// Output coherence after the measurement-conditioned beam splitter for
/// Gaussian inputs: (t^2/c^2 + r^2/c0^2)^(-1/2). Throws DomainError unless c, c0 > 0.
double output_l1(double c, double c0, const BeamSplitter& bs);

/// Y-quadrature counterpart for minimum-uncertainty states: sqrt(t^2 cy^2 + r^2 cy0^2).
double output_l1_y(double cy, double cy0, const BeamSplitter& bs);

/// Coherence in the conjugate quadrature of a minimum-uncertainty state, 2 pi / cx.
double min_uncertainty_partner(double cx);

/// l1 coherence of a pure Gaussian whose X-quadrature deviation is sigma, along either axis.
double pure_gaussian_l1(double sigma, QuadratureAxis axis);

}  // namespace qcoh::analytic
