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

#include "vsmc/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vsmc/errors.hpp"

namespace vsmc {

double thermal_noise(double bandwidth_hz) { return bandwidth_hz * kBoltzmann * kRoomTemperature; }

ViewGrid::ViewGrid(int views, int subdivision, double delta) {
  if (views < 2) throw ConfigError(fmt::format("V must be >= 2 (got {})", views));
  if (subdivision < 2) throw ConfigError(fmt::format("Q must be >= 2 (got {})", subdivision));
  if (!(delta >= 1.0)) throw ConfigError(fmt::format("delta must be >= 1 (got {})", delta));
  const double steps = delta * subdivision;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    throw ConfigError(fmt::format("delta must be a multiple of 1/Q (got delta={}, Q={})", delta,
                                  subdivision));
  }
  views_ = views;
  subdivision_ = subdivision;
  reach_steps_ = static_cast<int>(rounded);
}

View ViewGrid::parse(double v) const {
  const double scaled = v * subdivision_;
  const double g = std::round(scaled);
  if (!std::isfinite(v) || std::abs(scaled - g) > 1e-9 * std::max(1.0, std::abs(scaled))) {
    throw InvalidViewError(fmt::format("view {} is not on the 1/{} grid", v, subdivision_));
  }
  const View view{static_cast<int>(g)};
  if (!contains(view)) {
    throw InvalidViewError(fmt::format("view {} is outside [1, {}]", v, views_));
  }
  return view;
}

ViewWindows reference_windows(const ViewGrid& grid, View v) {
  if (!grid.contains(v)) {
    throw InvalidViewError(fmt::format("grid index {} is outside the view grid", v.g));
  }
  ViewWindows w;
  const int lo = std::max(grid.first().g, v.g - grid.reach_steps());
  const int hi = std::min(grid.last().g, v.g + grid.reach_steps());
  for (int g = lo; g < v.g; ++g) w.left.push_back(View{g});
  for (int g = v.g + 1; g <= hi; ++g) w.right.push_back(View{g});
  return w;
}

void Scenario::validate() const {
  const auto positive = [](double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ConfigError(fmt::format("{} must be a finite positive number (got {})", field, value));
    }
  };
  if (requests.empty()) throw ConfigError("K must be >= 1");
  if (channels.size() != requests.size()) {
    throw ConfigError(fmt::format("channels has {} entries, expected K={}", channels.size(),
                                  requests.size()));
  }
  if (user_synthesis_j.size() != requests.size()) {
    throw ConfigError(fmt::format("E_u_J has {} entries, expected K={}", user_synthesis_j.size(),
                                  requests.size()));
  }
  for (View r : requests) {
    if (!grid.contains(r)) {
      throw InvalidViewError(fmt::format("request grid index {} is outside the view grid", r.g));
    }
  }
  for (double h : channels) positive(h, "channels");
  for (double e : user_synthesis_j) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("E_u_J must be finite and >= 0");
  }
  positive(rate_bps, "R_bps");
  positive(frame_s, "T_s");
  positive(bandwidth_hz, "B_hz");
  positive(noise_w, "n0_W");
  if (!(server_synthesis_j >= 0.0) || !std::isfinite(server_synthesis_j)) {
    throw ConfigError("E_b_J must be finite and >= 0");
  }
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw ConfigError(fmt::format("beta must be >= 1 (got {})", beta));
  }
}

Selection Selection::empty(const Scenario& scenario) {
  const int n = scenario.grid.size();
  return Selection{std::vector<std::uint8_t>(n, 0), UserViewMatrix<std::uint8_t>(scenario.users(), n, 0)};
}

int Selection::transmitted_count() const {
  return static_cast<int>(std::count_if(x.begin(), x.end(), [](std::uint8_t b) { return b != 0; }));
}

void derive_transmissions(Selection& selection) {
  selection.x.assign(selection.y.views(), 0);
  for (int k = 0; k < selection.y.users(); ++k) {
    for (int s = 0; s < selection.y.views(); ++s) {
      if (selection.y(k, s)) selection.x[s] = 1;
    }
  }
}

std::string FeasibilityReport::describe() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += fmt::format("({}) user={} slot={}: {}", v.constraint, v.user, v.slot, v.message);
  }
  return out;
}

namespace {

void require_shapes(const Scenario& scenario, const Selection& selection) {
  const int n = scenario.grid.size();
  if (static_cast<int>(selection.x.size()) != n || selection.y.views() != n ||
      selection.y.users() != scenario.users()) {
    throw PreconditionError("selection shape does not match the scenario");
  }
}

}  // namespace

FeasibilityReport check_selection(const Scenario& scenario, const Selection& selection) {
  require_shapes(scenario, selection);
  const ViewGrid& grid = scenario.grid;
  const int n = grid.size();
  FeasibilityReport report;
  for (int s = 0; s < n; ++s) {
    if (selection.x[s] > 1) report.violations.push_back({1, -1, s, "x not binary"});
  }
  for (int k = 0; k < scenario.users(); ++k) {
    for (int s = 0; s < n; ++s) {
      if (selection.y(k, s) > 1) report.violations.push_back({2, k, s, "y not binary"});
    }
    const View r = scenario.requests[k];
    const ViewWindows w = reference_windows(grid, r);
    const int direct = selection.y(k, grid.slot(r));
    int right = direct;
    for (View v : w.right) right += selection.y(k, grid.slot(v));
    int left = direct;
    for (View v : w.left) left += selection.y(k, grid.slot(v));
    if (right != 1) {
      report.violations.push_back(
          {3, k, grid.slot(r), fmt::format("request plus right references sum to {}", right)});
    }
    if (left != 1) {
      report.violations.push_back(
          {4, k, grid.slot(r), fmt::format("request plus left references sum to {}", left)});
    }
    const int lo = std::max(grid.first().g, r.g - grid.reach_steps());
    const int hi = std::min(grid.last().g, r.g + grid.reach_steps());
    for (int s = 0; s < n; ++s) {
      const int g = grid.at(s).g;
      if (selection.y(k, s) && (g < lo || g > hi)) {
        report.violations.push_back({2, k, s, "view utilized outside the reference windows"});
      }
    }
    for (int s = 0; s < n; ++s) {
      if (selection.y(k, s) > selection.x[s]) {
        report.violations.push_back({5, k, s, "view utilized but not transmitted"});
      }
    }
  }
  return report;
}

FeasibilityReport check_allocation(const Scenario& scenario, const Selection& selection,
                                   const Allocation& allocation) {
  require_shapes(scenario, selection);
  const int n = scenario.grid.size();
  if (static_cast<int>(allocation.time_s.size()) != n ||
      static_cast<int>(allocation.power_w.size()) != n) {
    throw PreconditionError("allocation shape does not match the scenario");
  }
  FeasibilityReport report;
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    const double t = allocation.time_s[s];
    if (!(t >= 0.0)) report.violations.push_back({6, -1, s, fmt::format("negative time {}", t)});
    total += t;
  }
  if (total > scenario.frame_s * (1.0 + kRateSlack)) {
    report.violations.push_back(
        {7, -1, -1, fmt::format("total time {} exceeds frame {}", total, scenario.frame_s)});
  }
  const double required = scenario.rate_bps * scenario.frame_s;
  for (int k = 0; k < scenario.users(); ++k) {
    for (int s = 0; s < n; ++s) {
      if (!selection.y(k, s)) continue;
      const double t = allocation.time_s[s];
      const double p = allocation.power_w[s];
      const double bits =
          t * scenario.bandwidth_hz * std::log2(1.0 + p * scenario.channels[k] / scenario.noise_w);
      if (!(bits >= required * (1.0 - kRateSlack))) {
        report.violations.push_back(
            {8, k, s, fmt::format("delivers {} bits, needs {}", bits, required)});
      }
    }
  }
  return report;
}

EnergyBreakdown energy(const Scenario& scenario, const Selection& selection,
                       const Allocation& allocation) {
  require_shapes(scenario, selection);
  const ViewGrid& grid = scenario.grid;
  EnergyBreakdown e;
  for (int s = 0; s < grid.size(); ++s) {
    e.transmission_j += allocation.time_s[s] * allocation.power_w[s];
    if (selection.x[s] && !grid.is_original(grid.at(s))) e.server_synthesis_j += scenario.server_synthesis_j;
  }
  for (int k = 0; k < scenario.users(); ++k) {
    if (!selection.y(k, grid.slot(scenario.requests[k]))) e.user_synthesis_j += scenario.user_synthesis_j[k];
  }
  e.total_j = e.transmission_j + e.server_synthesis_j + scenario.beta * e.user_synthesis_j;
  return e;
}

}  // namespace vsmc
