#pragma once

#include <stdexcept>
#include <string>

namespace pqs {

/// A register or matrix exceeds a hard resource guard.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Time evolution did not reach the requested accuracy.
class EvolutionError : public std::runtime_error {
 public:
  EvolutionError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Invalid or ambiguous experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pqs
