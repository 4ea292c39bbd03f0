#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace mihd {

/// Bad user input: config files, CLI arguments, malformed checkpoints.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A direction failed its Diophantine certification; carries the witness.
class CertificationError : public std::runtime_error {
  public:
    CertificationError(const std::string& msg, std::array<long long, 3> witness)
        : std::runtime_error(msg), witness_(witness) {}
    const std::array<long long, 3>& witness() const { return witness_; }

  private:
    std::array<long long, 3> witness_;
};

/// Numerical failure inside a solver or stepper (non-contraction, blowup,
/// iteration limits, incompatible sources).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace mihd
