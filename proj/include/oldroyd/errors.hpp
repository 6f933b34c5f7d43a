#pragma once

#include <stdexcept>
#include <string>

namespace oldroyd {

// Violated precondition of an operation (wrong representation, mismatched
// grids, wrong model mode for a diagnostic, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid grid, partition or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vorticity with nonzero mean cannot be inverted on the torus.
class MeanCompatibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial-data generator cannot be resolved on the requested grid.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace oldroyd
