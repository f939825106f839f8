#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace twinbeam {

// A parameter lies outside the physical domain of the model.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A ratio whose denominator vanishes (e.g. both channels blocked).
class DegenerateError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Malformed user configuration; carries the offending field name.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

}  // namespace twinbeam
