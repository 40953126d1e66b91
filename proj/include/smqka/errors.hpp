#pragma once

#include <stdexcept>
#include <string>

namespace smqka {

// Invalid scenario or parameter; `field()` names the offending input.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A protocol step was invoked on state that violates its preconditions.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace smqka
