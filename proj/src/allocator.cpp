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

#include "vsmc/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vsmc/errors.hpp"
#include "vsmc/numerics.hpp"

namespace vsmc {

namespace {

// (w - 1) e^w + 1, evaluated without cancellation for small w.
double psi(double w) {
  if (std::abs(w) < 1e-4) return w * w * (0.5 + w / 3.0 + w * w / 8.0);
  return w * std::exp(w) - std::expm1(w);
}

// RT/B in seconds: the time the view would need at 1 bit/s/Hz.
double bit_seconds(const Scenario& s) { return s.rate_bps * s.frame_s / s.bandwidth_hz; }

double power_for_time(const Scenario& s, double h, double t) {
  return s.noise_w / h * std::expm1(bit_seconds(s) * std::numbers::ln2 / t);
}

}  // namespace

std::optional<double> h_min(std::span<const double> channels,
                            std::span<const std::uint8_t> users_of_view) {
  std::optional<double> best;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (users_of_view[k] && (!best || channels[k] < *best)) best = channels[k];
  }
  return best;
}

std::optional<double> h_min(const Scenario& scenario, const Selection& selection, int slot) {
  std::optional<double> best;
  for (int k = 0; k < scenario.users(); ++k) {
    if (selection.y(k, slot) && (!best || scenario.channels[k] < *best)) best = scenario.channels[k];
  }
  return best;
}

double view_time_at_lambda(const Scenario& s, double h, double lambda) {
  const double q = lambda * h / s.noise_w;
  const double w = lambert_w0((q - 1.0) / std::numbers::e) + 1.0;
  return bit_seconds(s) * std::numbers::ln2 / w;
}

double total_time_at_lambda(const Scenario& s, std::span<const double> h_mins, double lambda) {
  double total = 0.0;
  for (double h : h_mins) total += view_time_at_lambda(s, h, lambda);
  return total;
}

double marginal_energy(const Scenario& s, double h, double t) {
  return s.noise_w / h * psi(bit_seconds(s) * std::numbers::ln2 / t);
}

FrameShare share_frame(const Scenario& s, std::span<const double> h_mins) {
  FrameShare out;
  const std::size_t n = h_mins.size();
  out.time_s.assign(n, 0.0);
  out.power_w.assign(n, 0.0);
  if (n == 0) return out;
  const double frame = s.frame_s;
  if (n == 1) {
    out.time_s[0] = frame;
  } else {
    const double h_low = *std::min_element(h_mins.begin(), h_mins.end());
    // At lambda_lo the weakest view alone would fill the frame.
    const double lambda_lo = marginal_energy(s, h_low, frame);
    const auto residual = [&](double log_lambda) {
      return total_time_at_lambda(s, h_mins, std::exp(log_lambda)) / frame - 1.0;
    };
    const double lo = std::log(lambda_lo);
    double hi = lo + std::numbers::ln2;
    while (residual(hi) >= 0.0) {
      hi += std::numbers::ln2;
      if (hi - lo > 2000.0) throw ConvergenceError("no upper multiplier bracket", lo, hi);
    }
    const double log_lambda = bisect(residual, BisectionSpec{lo, hi, 1e-13, 200});
    const double lambda = std::exp(log_lambda);
    for (std::size_t i = 0; i < n; ++i) out.time_s[i] = view_time_at_lambda(s, h_mins[i], lambda);
  }
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.power_w[i] = power_for_time(s, h_mins[i], out.time_s[i]);
    energy += out.time_s[i] * out.power_w[i];
  }
  out.energy_j = energy;
  // lambda is reported from the first view's stationarity condition; all
  // views agree up to the bisection tolerance.
  out.lambda = marginal_energy(s, h_mins[0], out.time_s[0]);
  return out;
}

AllocationResult optimal_allocation(const Scenario& scenario, const Selection& selection) {
  const int n = scenario.grid.size();
  AllocationResult result;
  result.allocation.time_s.assign(n, 0.0);
  result.allocation.power_w.assign(n, 0.0);
  result.dual.h_min.assign(n, std::nullopt);

  std::vector<int> slots;
  std::vector<double> worst;
  for (int s = 0; s < n; ++s) {
    result.dual.h_min[s] = h_min(scenario, selection, s);
    if (!selection.x[s]) continue;
    if (!result.dual.h_min[s]) {
      throw PreconditionError("a transmitted view has no utilizing user");
    }
    slots.push_back(s);
    worst.push_back(*result.dual.h_min[s]);
  }
  const FrameShare share = share_frame(scenario, worst);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    result.allocation.time_s[slots[i]] = share.time_s[i];
    result.allocation.power_w[slots[i]] = share.power_w[i];
  }
  result.transmission_energy_j = share.energy_j;
  result.dual.lambda_star = share.lambda;
  return result;
}

Solution complete_solution(const Scenario& scenario, Selection selection, std::string solver) {
  Solution out;
  AllocationResult alloc = optimal_allocation(scenario, selection);
  out.energy = energy(scenario, selection, alloc.allocation);
  out.allocation = std::move(alloc.allocation);
  out.selection = std::move(selection);
  out.diagnostics.solver = std::move(solver);
  return out;
}

}  // namespace vsmc
