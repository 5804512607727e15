// Copyright 2026 The nilelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NILELAB_ERROR_HPP_
#define NILELAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nilelab {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument: non-finite input, wrong observation shape, empty sample.
class InputError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the family's domain (rejected at model construction).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Sample too small for the requested statistic (e.g. S with n < 2).
class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

// All observations equal, so S = 0 and scale-free statistics are undefined.
// A probability-zero event under every continuous family in this library.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// Statistic or operation that does not exist for the family
// (e.g. natural parameters of the uniform location family).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A user-supplied function returned a value outside its contract.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature ran out of budget. Carries the best partial result.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double partial_value,
                  double partial_error)
      : Error(what), partial_value_(partial_value),
        partial_error_(partial_error) {}

  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

// Conditional moments near w = 0, where K_0 diverges logarithmically.
class NearSingularError : public Error {
 public:
  using Error::Error;
};

// A verification harness refused to proceed because one of its inputs
// failed a self-check (e.g. a zero-mean statistic with nonzero mean).
class SelfCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace nilelab

#endif  // NILELAB_ERROR_HPP_
