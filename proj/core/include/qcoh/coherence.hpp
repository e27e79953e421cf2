#pragma once

#include <utility>
#include <vector>

#include "qcoh/numquad.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

/// Coherence value with the propagated integration error estimate.
struct CoherenceValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Mixture of Fock states with probability weights (photon-number diagonal state).
class FockMixture {
 public:
  struct Term {
    FockIndex n;
    double weight;
  };

  /// Throws DomainError for negative weights or weights not summing to 1 (within 1e-12).
  explicit FockMixture(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Photon-number probability distribution of the mixture in the quadrature basis.
  double quadrature_density(double x) const;

  double scale_hint() const;

 private:
  std::vector<Term> terms_;
};

/// Probabilities below this are treated as exact zeros in p ln p.
inline constexpr double kEntropyFloor = 1e-300;

/// -p ln p with the 0 ln 0 = 0 convention.
double entropy_density(double p);

/// l1-norm coherence: double integral of |rho(x, x')|.
CoherenceValue l1_coherence(const DensityKernel& k, const IntegrationConfig& config);

/// l1-norm coherence of a pure state as (integral |psi|)^2.
CoherenceValue l1_coherence_pure(const WaveFunction& psi, const IntegrationConfig& config);

/// Relative entropy of quadrature coherence of a pure state: the differential
/// entropy of |psi|^2 (the tr(rho ln rho) term vanishes).
double rel_entropy_coherence_pure(const WaveFunction& psi, const IntegrationConfig& config);

/// Relative entropy of quadrature coherence of a Fock-diagonal mixture:
/// sum w ln w plus the differential entropy of sum w psi_n^2.
double rel_entropy_coherence_fock_mixture(const FockMixture& m, const IntegrationConfig& config);

}  // namespace qcoh
