#include "qcoh/error.hpp"

#include <sstream>

namespace qcoh {

namespace {
std::string negligible_message(double x0_prime, double density) {
  std::ostringstream os;
  os << "negligible outcome: p(x0') = " << density << " at x0' = " << x0_prime
     << " is below the density floor";
  return os.str();
}

std::string coverage_message(double mass) {
  std::ostringstream os;
  os.precision(12);
  os << "outcome grid captures probability mass " << mass << "; widen the sweep grid";
  return os.str();
}
}  // namespace

NegligibleOutcomeError::NegligibleOutcomeError(double x0_prime, double density)
    : Error(negligible_message(x0_prime, density)), x0_prime_(x0_prime), density_(density) {}

CoverageError::CoverageError(double captured_mass)
    : Error(coverage_message(captured_mass)), captured_mass_(captured_mass) {}

ParseError::ParseError(std::string field, const std::string& what)
    : Error("state spec field '" + field + "': " + what), field_(std::move(field)) {}

}  // namespace qcoh
