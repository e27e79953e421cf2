#include "qcoh/analytic.hpp"

#include <cmath>
#include <numbers>

#include "qcoh/error.hpp"

namespace qcoh::analytic {

namespace {
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);
}

double gaussian_l1(const GaussianSchellParams& params) {
  params.validate();
  if (params.is_pure()) return 2.0 * kSqrt2Pi * params.sigma;
  return 2.0 * kSqrt2Pi * params.sigma * gaussian_purity(params);
}

double gaussian_purity(const GaussianSchellParams& params) {
  params.validate();
  if (params.is_pure()) return 1.0;
  const double s = params.sigma;
  const double m = params.mu;
  return m / std::sqrt(2.0 * s * s + m * m);
}

double thermal_l1(double n_bar) {
  if (!(n_bar >= 0.0)) throw DomainError("thermal_l1: mean photon number must be nonnegative");
  return std::sqrt(2.0 * std::numbers::pi / (2.0 * n_bar + 1.0));
}

double output_l1(double c, double c0, const BeamSplitter& bs) {
  if (!(c > 0.0) || !(c0 > 0.0)) throw DomainError("output_l1: coherences must be positive");
  const double t = bs.t();
  const double r = bs.r();
  return 1.0 / std::sqrt(t * t / (c * c) + r * r / (c0 * c0));
}

double output_l1_y(double cy, double cy0, const BeamSplitter& bs) {
  if (!(cy >= 0.0) || !(cy0 >= 0.0)) throw DomainError("output_l1_y: coherences must be nonnegative");
  const double t = bs.t();
  const double r = bs.r();
  return std::sqrt(t * t * cy * cy + r * r * cy0 * cy0);
}

double min_uncertainty_partner(double cx) {
  if (!(cx > 0.0)) throw DomainError("min_uncertainty_partner: coherence must be positive");
  return 2.0 * std::numbers::pi / cx;
}

double pure_gaussian_l1(double sigma, QuadratureAxis axis) {
  const double cx = gaussian_l1(squeezed_params(sigma));
  return axis == QuadratureAxis::X ? cx : min_uncertainty_partner(cx);
}

}  // namespace qcoh::analytic
