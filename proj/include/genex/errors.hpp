#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace genex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSequenceError : public Error {
 public:
  using Error::Error;
};

/// A method shape the order-condition checker cannot handle (more than two stages per term).
class UnsupportedShapeError : public Error {
 public:
  using Error::Error;
};

/// Coefficient-file or method-invariant violation. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid run configuration (step count not divisible by p, bad worker plan, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared while stepping.
///
/// Location fields are filled in as the error propagates outwards: the
/// composition knows the stage, the combiner the branch, the driver the step.
/// Catch by reference, annotate, and rethrow with `throw;` to keep the
/// dynamic type.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(what), detail_(what), message_(what) {}

  const char* what() const noexcept override { return message_.c_str(); }

  const std::optional<std::size_t>& stage() const noexcept { return stage_; }
  const std::optional<std::size_t>& branch() const noexcept { return branch_; }
  const std::optional<std::int64_t>& step() const noexcept { return step_; }

  void set_stage(std::size_t stage) {
    stage_ = stage;
    rebuild();
  }
  void set_branch(std::size_t branch) {
    branch_ = branch;
    rebuild();
  }
  void set_step(std::int64_t step) {
    step_ = step;
    rebuild();
  }

 private:
  void rebuild() {
    message_ = detail_;
    if (step_) message_ += " [step " + std::to_string(*step_) + "]";
    if (branch_) message_ += " [branch " + std::to_string(*branch_) + "]";
    if (stage_) message_ += " [stage " + std::to_string(*stage_) + "]";
  }

  std::string detail_;
  std::string message_;
  std::optional<std::size_t> stage_;
  std::optional<std::size_t> branch_;
  std::optional<std::int64_t> step_;
};

/// Force evaluation at the origin of the Kepler problem.
class SingularityError : public DivergenceError {
 public:
  using DivergenceError::DivergenceError;
};

/// Failure of a reference-solution solver (Kepler equation, LV refinement).
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// A parallel worker failed with something other than a divergence.
class WorkerError : public Error {
 public:
  WorkerError(std::size_t branch, const std::string& what)
      : Error("worker failed on branch " + std::to_string(branch) + ": " + what), branch_(branch) {}

  std::size_t branch() const noexcept { return branch_; }

 private:
  std::size_t branch_;
};

}  // namespace genex
