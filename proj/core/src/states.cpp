#include "qcoh/states.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qcoh/error.hpp"

namespace qcoh {

DensityKernel::DensityKernel(Function eval, double scale_hint, bool is_pure)
    : eval_(std::move(eval)), scale_hint_(scale_hint), is_pure_(is_pure) {
  if (!eval_) throw DomainError("DensityKernel: empty evaluator");
  if (!(scale_hint_ > 0.0) || !std::isfinite(scale_hint_))
    throw DomainError("DensityKernel: scale_hint must be positive and finite");
}

DensityKernel::DensityKernel(const WaveFunction& factor)
    : DensityKernel([f = factor.function()](double x, double xp) { return f(x) * f(xp); },
                    factor.scale_hint(), true) {
  factor_ = std::make_shared<const WaveFunction>(factor);
}

DensityKernel DensityKernel::displaced(double d) const {
  const double scale = scale_hint_ + std::abs(d) / 6.0;
  if (factor_) {
    return DensityKernel(WaveFunction([f = factor_->function(), d](double x) { return f(x - d); },
                                      scale, factor_->label()));
  }
  return DensityKernel([f = eval_, d](double x, double xp) { return f(x - d, xp - d); }, scale,
                       is_pure_);
}

DensityKernel DensityKernel::scaled(double factor) const {
  if (factor_ && factor > 0.0) {
    const double root = std::sqrt(factor);
    return DensityKernel(WaveFunction([f = factor_->function(), root](double x) { return root * f(x); },
                                      scale_hint_, factor_->label()));
  }
  return DensityKernel([f = eval_, factor](double x, double xp) { return factor * f(x, xp); },
                       scale_hint_, is_pure_);
}

WaveFunction::WaveFunction(Function eval, double scale_hint, std::string label)
    : eval_(std::move(eval)), scale_hint_(scale_hint), label_(std::move(label)) {
  if (!eval_) throw DomainError("WaveFunction: empty evaluator");
  if (!(scale_hint_ > 0.0) || !std::isfinite(scale_hint_))
    throw DomainError("WaveFunction: scale_hint must be positive and finite");
}

void GaussianSchellParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("GaussianSchellParams: sigma must be positive and finite");
  if (!(mu > 0.0)) throw DomainError("GaussianSchellParams: mu must be positive or infinite");
}

FockIndex::FockIndex(int n) : n_(n) {
  if (n < 0) throw DomainError("FockIndex: photon number must be nonnegative");
}

DensityKernel gaussian_schell_kernel(const GaussianSchellParams& params) {
  params.validate();
  const double sigma = params.sigma;
  if (params.is_pure()) return DensityKernel(gaussian_wavefunction(sigma));
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
  const double a = 1.0 / (4.0 * sigma * sigma);
  const double b = 1.0 / (4.0 * params.mu * params.mu);
  return DensityKernel(
      [norm, a, b](double x, double xp) {
        const double d = x - xp;
        return norm * std::exp(-a * (x * x + xp * xp) - b * d * d);
      },
      sigma, false);
}

GaussianSchellParams thermal_params(double n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar))
    throw DomainError("thermal_params: mean photon number must be nonnegative");
  GaussianSchellParams p;
  p.sigma = std::sqrt(2.0 * n_bar + 1.0) / 2.0;
  p.mu = n_bar == 0.0 ? GaussianSchellParams::kPureCoherenceWidth
                      : 0.5 * std::sqrt((2.0 * n_bar + 1.0) / (2.0 * n_bar * (n_bar + 1.0)));
  return p;
}

GaussianSchellParams squeezed_params(double dx) {
  GaussianSchellParams p{dx, GaussianSchellParams::kPureCoherenceWidth};
  p.validate();
  return p;
}

double hermite_function(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: negative order");
  // psi_n(x) = 2^(1/4) phi_n(sqrt(2) x), phi_n the standard Hermite functions.
  // The recurrence runs on phi_k * exp(q^2 / 2) with the Gaussian kept in log form.
  constexpr double kRescale = 1e150;
  static const double kLogRescale = std::log(kRescale);
  static const double kPrefactor = std::pow(2.0 / std::numbers::pi, 0.25);
  const double q = std::numbers::sqrt2 * x;
  double log_scale = -0.5 * q * q;
  double prev = 1.0;
  if (n == 0) return kPrefactor * std::exp(log_scale);
  double cur = std::numbers::sqrt2 * q;
  for (int k = 2; k <= n; ++k) {
    const double next = std::sqrt(2.0 / k) * q * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
  }
  if (cur == 0.0) return 0.0;
  return std::copysign(kPrefactor * std::exp(std::log(std::abs(cur)) + log_scale), cur);
}

WaveFunction fock_wavefunction(FockIndex n) {
  const int order = n.value();
  return WaveFunction([order](double x) { return hermite_function(order, x); },
                      std::sqrt(order + 1.0), "fock(" + std::to_string(order) + ")");
}

WaveFunction gaussian_wavefunction(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("gaussian_wavefunction: sigma must be positive and finite");
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const double a = 1.0 / (4.0 * sigma * sigma);
  std::string label = "squeezed(" + std::to_string(sigma) + ")";
  return WaveFunction([norm, a](double x) { return norm * std::exp(-a * x * x); }, sigma,
                      std::move(label));
}

DensityKernel pure_kernel(const WaveFunction& psi) { return DensityKernel(psi); }

double kernel_trace(const DensityKernel& k, const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(k.scale_hint());
  return integrate_1d([&k](double x) { return k(x, x); }, cfg).value;
}

double kernel_variance(const DensityKernel& k, const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(k.scale_hint());
  const double m1 = integrate_1d([&k](double x) { return x * k(x, x); }, cfg).value;
  const double m2 = integrate_1d([&k](double x) { return x * x * k(x, x); }, cfg).value;
  return m2 - m1 * m1;
}

double kernel_purity(const DensityKernel& k, const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(k.scale_hint());
  return integrate_2d([&k](double x, double xp) { return k(x, xp) * k(xp, x); }, cfg).value;
}

WaveFunction y_quadrature_modulus(const WaveFunction& psi, double y_scale_hint,
                                  const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(psi.scale_hint());
  auto eval = [f = psi.function(), cfg](double y) {
    const double c =
        integrate_1d([&](double x) { return std::cos(2.0 * x * y) * f(x); }, cfg).value;
    const double s =
        integrate_1d([&](double x) { return std::sin(2.0 * x * y) * f(x); }, cfg).value;
    return std::hypot(c, s) / std::sqrt(std::numbers::pi);
  };
  return WaveFunction(std::move(eval), y_scale_hint, "|Y|" + psi.label());
}

}  // namespace qcoh
