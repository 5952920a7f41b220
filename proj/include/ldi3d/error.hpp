#pragma once

#include <stdexcept>
#include <string>

namespace ldi3d {

/// Malformed or out-of-contract input data (bad image, NaN disparity, shape mismatch).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration value or file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant was violated. Indicates a bug, never bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Failure inside an inpainting backend; message is prefixed with the stage name.
class BackendError : public std::runtime_error {
 public:
  BackendError(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace ldi3d
