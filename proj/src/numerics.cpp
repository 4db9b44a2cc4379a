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

#include "vsmc/numerics.hpp"

#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace vsmc {

namespace {

// W0 around the branch point in p = sqrt(2(e*x + 1)).
double branch_series(double p) {
  constexpr double c[] = {-1.0,
                          1.0,
                          -1.0 / 3.0,
                          11.0 / 72.0,
                          -43.0 / 540.0,
                          769.0 / 17280.0,
                          -221.0 / 8505.0,
                          680863.0 / 43545600.0,
                          -1963.0 / 204120.0,
                          226287557.0 / 37623398400.0};
  double w = 0.0;
  for (int i = 9; i >= 0; --i) w = w * p + c[i];
  return w;
}

}  // namespace

double lambert_w0(double x) {
  constexpr double e = std::numbers::e;
  if (std::isnan(x)) throw DomainError("lambert_w0 of NaN");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  // e*x + 1 from the distance to -1/e, with 1/e split into two doubles so
  // that the distance is exact near the branch point.
  constexpr double kInvEHi = 0.36787944117144233;
  constexpr double kInvELo = -1.2428753672788363e-17;
  const double q = e * ((x + kInvEHi) + kInvELo);
  // Within a few ulps of -1/e the argument carries no information beyond
  // rounding; -1 satisfies w e^w = x there to the same precision.
  constexpr double kSlack = 8.0 * std::numeric_limits<double>::epsilon();
  if (q < -kSlack) throw DomainError(fmt::format("lambert_w0 argument {} below -1/e", x));
  if (q <= kSlack) return -1.0;
  if (q < e * 1e-6) return branch_series(std::sqrt(2.0 * q));

  if (x > e) {
    // Halley on w + ln w - ln x, which stays well scaled for huge x.
    const double lx = std::log(x);
    double w = lx - std::log(lx) + std::log(lx) / lx;
    for (int i = 0; i < 64; ++i) {
      const double g = w + std::log(w) - lx;
      const double g1 = 1.0 + 1.0 / w;
      const double g2 = -1.0 / (w * w);
      const double step = g / (g1 - 0.5 * g * g2 / g1);
      w -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
    }
    return w;
  }

  double w = q < 0.5 ? branch_series(std::sqrt(2.0 * q)) : std::log1p(x) * (1.0 - 0.3 * std::log1p(x) / (1.0 + std::log1p(x)));
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - 0.5 * (w + 2.0) * f / wp1;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace vsmc
