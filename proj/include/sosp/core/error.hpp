#pragma once

#include <stdexcept>
#include <string>

namespace sosp {

// Caller bug: dimension mismatch or a violated precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A NaN or Inf reached a value that must stay finite.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-facing configuration. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace sosp
