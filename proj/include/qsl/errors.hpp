// Copyright 2026 The qsl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace qsl {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration and input errors (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Raised when a name lookup (builtin D-functional, model, bound kind)
/// does not match any registered entry.
class UnknownName : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Numerical and domain errors (CLI exit code 3). Where a tolerance was
/// violated, the measured violation is carried alongside the message.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what,
                        double measured = std::numeric_limits<double>::quiet_NaN())
      : Error(what), measured_(measured) {}

  /// The measured quantity that triggered the error (NaN if not applicable).
  double measured() const { return measured_; }

 private:
  double measured_;
};

class DimMismatch : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotFinite : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotHermitian : public NumericError {
 public:
  using NumericError::NumericError;
};

/// measured() holds the most negative eigenvalue.
class NotPSD : public NumericError {
 public:
  using NumericError::NumericError;
};

/// measured() holds |Tr(m) - 1|.
class TraceDeviation : public NumericError {
 public:
  using NumericError::NumericError;
};

/// measured() holds |norm - 1| of the offending amplitude vector.
class NotNormalized : public NumericError {
 public:
  using NumericError::NumericError;
};

class BadRank : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Raised when a requested duration is not an integer number of steps.
class StepMismatch : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Raised when an evolved state stops being a valid density matrix.
/// step() identifies the offending grid point.
class DriftExceeded : public NumericError {
 public:
  DriftExceeded(const std::string& what, std::size_t step, double measured)
      : NumericError(what, measured), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_ = 0;
};

/// Raised when a purity ratio is singular (1 - Tr(rho^2) below threshold)
/// and the accompanying numerator does not vanish with it.
class PurityDegenerate : public NumericError {
 public:
  PurityDegenerate(const std::string& what, std::size_t grid_index, double measured)
      : NumericError(what, measured), grid_index_(grid_index) {}
  std::size_t grid_index() const { return grid_index_; }

 private:
  std::size_t grid_index_ = 0;
};

/// measured() holds the purity of the offending initial state.
class MixedInitialState : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroEnergy : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroDenominator : public NumericError {
 public:
  using NumericError::NumericError;
};

class TooFewSamples : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Raised when a series value leaves the domain of a D-functional.
class DomainExit : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotAdmissible : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace qsl
