// Copyright 2026 The blowup-lab Authors
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

#include <stdexcept>
#include <string>

namespace blowup {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input failed a structural check (e.g. a non-Hermitian matrix handed to a
/// Hermitian routine).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A requested reduced polarization lies at or beyond what the field sweep
/// can reach.
class UnreachableStateError : public DomainError {
 public:
  UnreachableStateError(const std::string& what, double supremum)
      : DomainError(what), supremum_(supremum) {}
  double supremum() const noexcept { return supremum_; }

 private:
  double supremum_;
};

/// A reduced state that the selected preparation procedure cannot produce.
class PreparationDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonInvertiblePropagatorError : public Error {
 public:
  NonInvertiblePropagatorError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

class NonInvertibleSusceptibilityError : public Error {
 public:
  NonInvertibleSusceptibilityError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Fit samples do not span enough of the input coefficient space.
class InsufficientSpanError : public Error {
 public:
  InsufficientSpanError(const std::string& what, int rank)
      : Error(what), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

}  // namespace blowup
