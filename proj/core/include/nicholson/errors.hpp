/*
 * Copyright 2026 The nicholson-dde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nicholson {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or argument left the nonnegative cone.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed model, history, step size, or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter is outside its admissible range.
class ParameterError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// An operation was called without its required prerequisite verdicts.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A query time is outside the range covered by a trajectory.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The integrator could not keep the state nonnegative even at the minimum step.
class PositivityError : public Error {
 public:
  PositivityError(double time, std::size_t component, const std::string& what)
      : Error(what), time_(time), component_(component) {}

  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] std::size_t component() const noexcept { return component_; }

 private:
  double time_;
  std::size_t component_;
};

/// An iterative solver ran out of iterations.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(double best_residual, const std::string& what)
      : Error(what), best_residual_(best_residual) {}

  [[nodiscard]] double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace nicholson
