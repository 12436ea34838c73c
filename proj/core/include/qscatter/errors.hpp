#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qscatter {

// Base for all toolkit errors. `category()` is stable and machine-readable;
// the CLI prints it and maps it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

// Bad user-facing input (flag/field value out of range, unknown method, ...).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& field, const std::string& message)
      : Error("validation", field + ": " + message), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Structural mismatch between operands (e.g. envelopes on different grids).
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& message) : Error("shape", message) {}
};

// Adaptive step size underflowed or the step budget was exhausted.
class StiffnessError : public Error {
 public:
  explicit StiffnessError(const std::string& message) : Error("stiffness", message) {}
};

// A state-space invariant (trace, Hermiticity, positivity) drifted past tolerance.
class IntegrationDriftError : public Error {
 public:
  explicit IntegrationDriftError(const std::string& message) : Error("drift", message) {}
};

// A closed-form transcription was evaluated at (or too near) one of its poles.
class DegenerateParameterError : public Error {
 public:
  explicit DegenerateParameterError(const std::string& message)
      : Error("degenerate", message) {}
};

// Sampling too coarse for the requested finite-difference stencil.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& message) : Error("resolution", message) {}
};

// Minimizer could not certify a bracketed minimum; carries the sampled profile.
class OptimizationError : public Error {
 public:
  OptimizationError(const std::string& message, std::vector<std::pair<double, double>> profile)
      : Error("optimization", message), profile_(std::move(profile)) {}

  const std::vector<std::pair<double, double>>& profile() const noexcept { return profile_; }

 private:
  std::vector<std::pair<double, double>> profile_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("usage", message) {}
};

}  // namespace qscatter
