#pragma once

#include <stdexcept>
#include <string>

namespace risklab {

/// Invalid input: bad probabilities, dimension mismatch, malformed config.
/// The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine could not produce a finite answer it was expected to
/// produce (e.g. a bisection bracket breached its cap). Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace risklab
