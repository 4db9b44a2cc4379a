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

// Domain model for view-synthesis-enabled multicast over a TDMA downlink:
// the view grid, a problem instance, view selections, time/power
// allocations, feasibility predicates and the weighted energy functional.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vsmc {

inline constexpr double kBoltzmann = 1.38e-23;      // J/K
inline constexpr double kRoomTemperature = 300.0;   // K

// Receiver noise power B*k_B*T0 in watts.
double thermal_noise(double bandwidth_hz);

// A view on the 1/Q grid, stored exactly as the integer g = v*Q.
struct View {
  int g = 0;
  friend auto operator<=>(const View&, const View&) = default;
};

// The full view set {1, 1+1/Q, ..., V} together with the synthesis reach.
// The reach is held in grid steps so every window is an exact integer range.
class ViewGrid {
 public:
  ViewGrid() = default;
  // Throws ConfigError unless V >= 2, Q >= 2, delta >= 1 and delta*Q is an
  // integer.
  ViewGrid(int views, int subdivision, double delta);

  int original_views() const { return views_; }
  int subdivision() const { return subdivision_; }
  int reach_steps() const { return reach_steps_; }
  double reach() const { return static_cast<double>(reach_steps_) / subdivision_; }

  int size() const { return (views_ - 1) * subdivision_ + 1; }
  View first() const { return View{subdivision_}; }
  View last() const { return View{views_ * subdivision_}; }

  bool contains(View v) const { return v.g >= first().g && v.g <= last().g; }
  bool is_original(View v) const { return v.g % subdivision_ == 0; }

  // 0-based position of a view inside the grid; requires contains(v).
  int slot(View v) const { return v.g - subdivision_; }
  View at(int slot) const { return View{slot + subdivision_}; }

  double value(View v) const { return static_cast<double>(v.g) / subdivision_; }
  // Maps a real view index onto the grid; throws InvalidViewError when it is
  // not within 1e-9 of a grid point or lies outside [1, V].
  View parse(double v) const;

  friend bool operator==(const ViewGrid&, const ViewGrid&) = default;

 private:
  int views_ = 2;
  int subdivision_ = 2;
  int reach_steps_ = 2;
};

struct ViewWindows {
  std::vector<View> left;   // v - delta <= x < v
  std::vector<View> right;  // v < x <= v + delta
};

// Left and right reference windows of v clipped to the grid. Throws
// InvalidViewError when v is not a grid view.
ViewWindows reference_windows(const ViewGrid& grid, View v);

// Dense users x views table indexed by (user, grid slot).
template <typename T>
class UserViewMatrix {
 public:
  UserViewMatrix() = default;
  UserViewMatrix(int users, int views, T fill = T{})
      : users_(users), views_(views), data_(static_cast<std::size_t>(users) * views, fill) {}

  int users() const { return users_; }
  int views() const { return views_; }

  T& operator()(int k, int slot) { return data_[static_cast<std::size_t>(k) * views_ + slot]; }
  const T& operator()(int k, int slot) const {
    return data_[static_cast<std::size_t>(k) * views_ + slot];
  }

  std::span<T> row(int k) { return {data_.data() + static_cast<std::size_t>(k) * views_, static_cast<std::size_t>(views_)}; }
  std::span<const T> row(int k) const {
    return {data_.data() + static_cast<std::size_t>(k) * views_, static_cast<std::size_t>(views_)};
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const UserViewMatrix&, const UserViewMatrix&) = default;

 private:
  int users_ = 0;
  int views_ = 0;
  std::vector<T> data_;
};

// One complete problem instance. All physical quantities are SI.
struct Scenario {
  ViewGrid grid;
  std::vector<View> requests;           // r_k
  std::vector<double> channels;         // h_k, channel power gain
  double rate_bps = 1e7;                // R
  double frame_s = 0.1;                 // T
  double bandwidth_hz = 1e7;            // B
  double noise_w = 0.0;                 // n0
  double server_synthesis_j = 5e-7;     // E_b
  std::vector<double> user_synthesis_j; // E_u,k
  double beta = 3.0;

  int users() const { return static_cast<int>(requests.size()); }
  // Throws ConfigError / InvalidViewError naming the offending field.
  void validate() const;
};

// Binary view transmission vector x (per grid slot) and utilization matrix y.
struct Selection {
  std::vector<std::uint8_t> x;
  UserViewMatrix<std::uint8_t> y;

  static Selection empty(const Scenario& scenario);
  int transmitted_count() const;
};

// x_v = max_k y_{k,v}: a view is transmitted exactly when someone uses it.
void derive_transmissions(Selection& selection);

struct Allocation {
  std::vector<double> time_s;   // t_v
  std::vector<double> power_w;  // p_v
};

struct EnergyBreakdown {
  double transmission_j = 0.0;
  double server_synthesis_j = 0.0;
  double user_synthesis_j = 0.0;  // unweighted
  double total_j = 0.0;           // transmission + server + beta * users
};

struct Violation {
  int constraint = 0;  // equation number of the model constraint (1)..(8)
  int user = -1;
  int slot = -1;
  std::string message;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

FeasibilityReport check_selection(const Scenario& scenario, const Selection& selection);
FeasibilityReport check_allocation(const Scenario& scenario, const Selection& selection,
                                   const Allocation& allocation);
EnergyBreakdown energy(const Scenario& scenario, const Selection& selection,
                       const Allocation& allocation);

// Relative slack used when checking the successful-transmission constraint.
inline constexpr double kRateSlack = 1e-9;

}  // namespace vsmc
