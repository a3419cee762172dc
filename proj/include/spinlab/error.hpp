// Copyright 2026 The spinlab Authors.
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

#ifndef SPINLAB_ERROR_HPP
#define SPINLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spinlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count or vector length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured size limit (dense matrices, enumerations).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the mathematical domain of an operation (e.g. p > n).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Distribution or solver parameters are invalid.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a type invariant (non-unit Bloch vector, bad matching).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document. `field()` names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Iterative method stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace spinlab

#endif  // SPINLAB_ERROR_HPP
