#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "qcoh/numquad.hpp"

namespace qcoh {

class WaveFunction;

/// Real symmetric quadrature kernel <x|rho|x'>.
///
/// The kernel is an immutable value holding its evaluator. `scale_hint` is the
/// characteristic spatial extent; library integrals widen their truncation to
/// 12 * max(scale_hint, 1/2).
class DensityKernel {
 public:
  using Function = std::function<double(double, double)>;

  DensityKernel(Function eval, double scale_hint, bool is_pure);

  /// Rank-one kernel psi(x) psi(x'); keeps psi available as `rank_one_factor()`.
  explicit DensityKernel(const WaveFunction& factor);

  double operator()(double x, double xp) const { return eval_(x, xp); }
  double scale_hint() const noexcept { return scale_hint_; }
  bool is_pure() const noexcept { return is_pure_; }
  const Function& function() const noexcept { return eval_; }

  /// psi with eval = psi(x) psi(x'), when the kernel was built from one.
  const std::shared_ptr<const WaveFunction>& rank_one_factor() const noexcept { return factor_; }

  /// Kernel of the same state displaced by d along X: (x, x') -> rho(x - d, x' - d).
  DensityKernel displaced(double d) const;

  /// Kernel multiplied by a positive constant (same purity flag and scale).
  DensityKernel scaled(double factor) const;

 private:
  Function eval_;
  double scale_hint_;
  bool is_pure_;
  std::shared_ptr<const WaveFunction> factor_;
};

/// Real quadrature wavefunction psi(x) of a pure state.
class WaveFunction {
 public:
  using Function = std::function<double(double)>;

  WaveFunction(Function eval, double scale_hint, std::string label);

  double operator()(double x) const { return eval_(x); }
  double scale_hint() const noexcept { return scale_hint_; }
  const std::string& label() const noexcept { return label_; }
  const Function& function() const noexcept { return eval_; }

 private:
  Function eval_;
  double scale_hint_;
  std::string label_;
};

/// Gaussian Schell-model parameters. `mu == kPureCoherenceWidth` (+inf) is
/// the pure Gaussian and is handled by explicit branches everywhere.
struct GaussianSchellParams {
  static constexpr double kPureCoherenceWidth = std::numeric_limits<double>::infinity();

  double sigma = 0.5;
  double mu = kPureCoherenceWidth;

  bool is_pure() const noexcept { return mu == kPureCoherenceWidth; }
  void validate() const;
};

/// Photon number. Construction rejects negative values.
class FockIndex {
 public:
  explicit FockIndex(int n);
  int value() const noexcept { return n_; }

 private:
  int n_;
};

DensityKernel gaussian_schell_kernel(const GaussianSchellParams& params);

/// Thermal state with mean photon number n_bar; n_bar == 0 gives the vacuum (mu = inf).
GaussianSchellParams thermal_params(double n_bar);

/// Pure Gaussian with quadrature uncertainty dx (squeezed vacuum for dx != 1/2).
GaussianSchellParams squeezed_params(double dx);

/// Normalized Hermite function psi_n(x) in the convention X = (a + a^dagger)/2,
/// where the vacuum is (2/pi)^(1/4) exp(-x^2). Uses the normalized three-term
/// recurrence with dynamic rescaling, so it neither overflows nor underflows
/// inside the classically allowed region for any n.
double hermite_function(int n, double x);

WaveFunction fock_wavefunction(FockIndex n);

/// Pure Gaussian wavefunction with standard deviation sigma of |psi|^2.
WaveFunction gaussian_wavefunction(double sigma);

DensityKernel pure_kernel(const WaveFunction& psi);

/// Integral of the kernel diagonal.
double kernel_trace(const DensityKernel& k, const IntegrationConfig& config);

/// Quadrature variance of a unit-trace kernel.
double kernel_variance(const DensityKernel& k, const IntegrationConfig& config);

/// tr(rho^2) of a unit-trace kernel.
double kernel_purity(const DensityKernel& k, const IntegrationConfig& config);

/// Modulus |psi~(y)| of the Y-quadrature wavefunction
/// psi~(y) = pi^(-1/2) * integral exp(-2ixy) psi(x) dx, computed numerically.
/// The result carries the Y-space scale hint `y_scale_hint`.
WaveFunction y_quadrature_modulus(const WaveFunction& psi, double y_scale_hint,
                                  const IntegrationConfig& config);

}  // namespace qcoh
