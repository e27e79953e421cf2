#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative n̄, nonpositive σ, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integrand produced a non-finite value. The message names the abscissa.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an outcome whose probability density is below the density floor.
class NegligibleOutcomeError : public Error {
 public:
  NegligibleOutcomeError(double x0_prime, double density);

  double x0_prime() const noexcept { return x0_prime_; }
  double density() const noexcept { return density_; }

 private:
  double x0_prime_;
  double density_;
};

/// An outcome grid that misses part of the outcome distribution.
class CoverageError : public Error {
 public:
  explicit CoverageError(double captured_mass);

  double captured_mass() const noexcept { return captured_mass_; }

 private:
  double captured_mass_;
};

/// Malformed state specification. `field()` names the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what);

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qcoh
