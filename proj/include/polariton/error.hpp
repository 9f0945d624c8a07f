#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polariton {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class CflViolation : public Error {
 public:
  CflViolation(double ratio, const std::string& what)
      : Error(what), ratio_(ratio) {}
  [[nodiscard]] double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

/// A NaN or Inf appeared during stepping. `step()` is the index of the step
/// that produced it (the state after `step() - 1` steps was still finite).
class NonFiniteState : public Error {
 public:
  NonFiniteState(std::uint64_t step, const std::string& what)
      : Error(what), step_(step) {}
  [[nodiscard]] std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

class SnapshotError : public Error {
 public:
  enum class Kind { bad_magic, unsupported_version, truncated, malformed, io };

  SnapshotError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace polariton
