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

// Small instance builders shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include "vsmc/model.hpp"

namespace vsmc::testing {

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Scenario on the given grid with the default physical parameters.
inline Scenario make_scenario(int views, int q, double delta, const std::vector<double>& requests,
                              const std::vector<double>& channels) {
  Scenario s;
  s.grid = ViewGrid(views, q, delta);
  for (double r : requests) s.requests.push_back(s.grid.parse(r));
  s.channels = channels;
  s.noise_w = thermal_noise(s.bandwidth_hz);
  s.user_synthesis_j.assign(requests.size(), 5e-7);
  s.validate();
  return s;
}

inline int slot_of(const Scenario& s, double v) { return s.grid.slot(s.grid.parse(v)); }

inline std::vector<double> values(const ViewGrid& grid, const std::vector<View>& views) {
  std::vector<double> out;
  for (View v : views) out.push_back(grid.value(v));
  return out;
}

// Selection from per-user lists of utilized views; x is derived.
inline Selection make_selection(const Scenario& s, const std::vector<std::vector<double>>& used) {
  Selection sel = Selection::empty(s);
  for (int k = 0; k < static_cast<int>(used.size()); ++k) {
    for (double v : used[k]) sel.y(k, slot_of(s, v)) = 1;
  }
  derive_transmissions(sel);
  return sel;
}

}  // namespace vsmc::testing
