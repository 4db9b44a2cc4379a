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

#include <cmath>

#include "vsmc/errors.hpp"

namespace vsmc {

// Principal branch W0 of the Lambert W function, w*exp(w) = x, w >= -1.
// Throws DomainError for x < -1/e.
double lambert_w0(double x);

struct BisectionSpec {
  double lower = 0.0;
  double upper = 1.0;
  double tolerance = 1e-12;  // on |residual|
  int max_iterations = 200;
};

// Root of a strictly monotone residual on [lower, upper]. Throws BracketError
// when the endpoints do not straddle zero and ConvergenceError (carrying the
// last bracket) when the iteration budget or floating point resolution runs
// out first.
template <typename Residual>
double bisect(Residual&& residual, const BisectionSpec& spec) {
  double lo = spec.lower;
  double hi = spec.upper;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (std::abs(f_lo) <= spec.tolerance) return lo;
  if (std::abs(f_hi) <= spec.tolerance) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) {
    throw BracketError("bisection bracket does not straddle a root", lo, hi);
  }
  for (int i = 0; i < spec.max_iterations; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = residual(mid);
    if (std::abs(f_mid) <= spec.tolerance) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisection did not reach the residual tolerance", lo, hi);
}

}  // namespace vsmc
