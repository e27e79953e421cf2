#include "qcoh/coherence.hpp"

#include <algorithm>
#include <cmath>

#include "qcoh/error.hpp"

namespace qcoh {

FockMixture::FockMixture(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("FockMixture: no terms");
  double total = 0.0;
  for (const Term& t : terms_) {
    if (!(t.weight >= 0.0)) throw DomainError("FockMixture: negative weight");
    total += t.weight;
  }
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j)
      if (terms_[i].n.value() == terms_[j].n.value())
        throw DomainError("FockMixture: photon number listed twice");
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("FockMixture: weights do not sum to 1");
}

double FockMixture::quadrature_density(double x) const {
  double p = 0.0;
  for (const Term& t : terms_) {
    if (t.weight == 0.0) continue;
    const double psi = hermite_function(t.n.value(), x);
    p += t.weight * psi * psi;
  }
  return p;
}

double FockMixture::scale_hint() const {
  int n_max = 0;
  for (const Term& t : terms_) n_max = std::max(n_max, t.n.value());
  return std::sqrt(n_max + 1.0);
}

double entropy_density(double p) {
  if (p < kEntropyFloor) return 0.0;
  return -p * std::log(p);
}

namespace {

// A rank-one kernel psi(x) psi(x') has rows that vanish at the zeros of psi,
// which are the kinks of the outer integrand. They are the sign changes of
// the row through the largest diagonal sample.
std::vector<double> rank_one_nodes(const DensityKernel& k, const IntegrationConfig& cfg) {
  const GaussLegendreRule rule = gauss_legendre(cfg.base_order);
  double best_x = 0.0;
  double best = -1.0;
  const int panels = 16;
  for (int i = 0; i < panels; ++i) {
    const double a = -cfg.half_width + 2.0 * cfg.half_width * i / panels;
    const double half = cfg.half_width / panels;
    for (double node : rule.nodes) {
      const double x = a + half * (1.0 + node);
      const double d = k(x, x);
      if (d > best) {
        best = d;
        best_x = x;
      }
    }
  }
  if (!(best > 0.0)) return {};
  return sign_change_roots([&k, best_x](double x) { return k(x, best_x); }, cfg);
}

}  // namespace

CoherenceValue l1_coherence(const DensityKernel& k, const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(k.scale_hint());
  const std::vector<double> outer_kinks = k.is_pure() ? rank_one_nodes(k, cfg) : std::vector<double>{};
  const QuadResult r =
      integrate_2d_abs([&k](double x, double xp) { return k(x, xp); }, cfg, outer_kinks);
  return {r.value, r.error_estimate};
}

CoherenceValue l1_coherence_pure(const WaveFunction& psi, const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(psi.scale_hint());
  const QuadResult r = integrate_1d_abs(psi.function(), cfg);
  // d(s^2) = 2 s ds
  return {r.value * r.value, 2.0 * std::abs(r.value) * r.error_estimate};
}

double rel_entropy_coherence_pure(const WaveFunction& psi, const IntegrationConfig& config) {
  const IntegrationConfig cfg = config.widened_for(psi.scale_hint());
  return integrate_1d(
             [&psi](double x) {
               const double v = psi(x);
               return entropy_density(v * v);
             },
             cfg)
      .value;
}

double rel_entropy_coherence_fock_mixture(const FockMixture& m, const IntegrationConfig& config) {
  double spectrum = 0.0;
  for (const auto& t : m.terms())
    if (t.weight > 0.0) spectrum += t.weight * std::log(t.weight);
  const IntegrationConfig cfg = config.widened_for(m.scale_hint());
  const double h =
      integrate_1d([&m](double x) { return entropy_density(m.quadrature_density(x)); }, cfg).value;
  return spectrum + h;
}

}  // namespace qcoh
