// Copyright 2026 The vsmc Authors
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

namespace vsmc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidViewError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  BracketError(const std::string& what, double lo, double hi)
      : Error(what), lower(lo), upper(hi) {}
  double lower;
  double upper;
};

// Iterative method ran out of iterations. Carries the last bracket (for
// bisection) or the last residuals (for the interior point solver).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double a, double b)
      : Error(what), first(a), second(b) {}
  double first;
  double second;
};

}  // namespace vsmc
