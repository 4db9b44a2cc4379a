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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vsmc/errors.hpp"
#include "vsmc/experiments.hpp"
#include "vsmc/model.hpp"

namespace vsmc {
namespace {

using testing::make_scenario;
using testing::make_selection;
using testing::slot_of;
using testing::values;

bool has_violation(const FeasibilityReport& r, int constraint, int user, int slot) {
  for (const auto& v : r.violations) {
    if (v.constraint == constraint && v.user == user && v.slot == slot) return true;
  }
  return false;
}

TEST(ViewGridTest, SizeAndRoundTrip) {
  const ViewGrid grid(5, 10, 1.0);
  EXPECT_EQ(grid.size(), 41);
  for (int s = 0; s < grid.size(); ++s) {
    const View v = grid.at(s);
    EXPECT_EQ(grid.parse(grid.value(v)), v);
    EXPECT_EQ(grid.slot(v), s);
    EXPECT_EQ(grid.is_original(v), s % 10 == 0);
  }
}

TEST(ViewGridTest, RejectsInvalidParameters) {
  EXPECT_THROW(ViewGrid(1, 2, 1.0), ConfigError);
  EXPECT_THROW(ViewGrid(4, 1, 1.0), ConfigError);
  EXPECT_THROW(ViewGrid(4, 2, 0.5), ConfigError);
  EXPECT_THROW(ViewGrid(4, 2, 1.25), ConfigError);
  EXPECT_NO_THROW(ViewGrid(4, 2, 1.5));
}

TEST(ViewGridTest, ParseRejectsOffGridViews) {
  const ViewGrid grid(5, 10, 1.0);
  EXPECT_THROW(grid.parse(2.55), InvalidViewError);
  EXPECT_THROW(grid.parse(0.9), InvalidViewError);
  EXPECT_THROW(grid.parse(5.1), InvalidViewError);
  EXPECT_EQ(grid.parse(2.5).g, 25);
}

TEST(ReferenceWindowsTest, BoundaryViewHasEmptyLeftWindow) {
  const ViewGrid grid(4, 2, 1.0);
  const ViewWindows w = reference_windows(grid, grid.parse(1));
  EXPECT_TRUE(w.left.empty());
  EXPECT_EQ(values(grid, w.right), (std::vector<double>{1.5, 2}));
}

TEST(ReferenceWindowsTest, InteriorViewWindowsHaveReachTimesQMembers) {
  const ViewGrid grid(5, 10, 1.0);
  const ViewWindows w = reference_windows(grid, grid.parse(3));
  ASSERT_EQ(w.left.size(), 10u);
  ASSERT_EQ(w.right.size(), 10u);
  EXPECT_DOUBLE_EQ(grid.value(w.left.front()), 2.0);
  EXPECT_DOUBLE_EQ(grid.value(w.left.back()), 2.9);
  EXPECT_DOUBLE_EQ(grid.value(w.right.front()), 3.1);
  EXPECT_DOUBLE_EQ(grid.value(w.right.back()), 4.0);
}

TEST(ReferenceWindowsTest, RightWindowClippedAtLastView) {
  const ViewGrid grid(4, 2, 1.0);
  const ViewWindows w = reference_windows(grid, grid.parse(3.5));
  EXPECT_EQ(values(grid, w.left), (std::vector<double>{2.5, 3}));
  EXPECT_EQ(values(grid, w.right), (std::vector<double>{4}));
}

TEST(ReferenceWindowsTest, OffGridViewThrows) {
  const ViewGrid grid(4, 2, 1.0);
  EXPECT_THROW(reference_windows(grid, View{1}), InvalidViewError);
  EXPECT_THROW(reference_windows(grid, View{9}), InvalidViewError);
}

class FourUserSelectionTest : public ::testing::Test {
 protected:
  Scenario s = make_scenario(4, 2, 1.0, {1, 2, 3, 4}, {1e-3, 1e-3, 1e-3, 1e-3});
  Selection shared = make_selection(s, {{1}, {1, 2.5}, {2.5, 4}, {4}});
};

TEST_F(FourUserSelectionTest, SharedReferenceSelectionIsFeasible) {
  const FeasibilityReport r = check_selection(s, shared);
  EXPECT_TRUE(r.ok()) << r.describe();
  EXPECT_EQ(shared.transmitted_count(), 3);
}

TEST_F(FourUserSelectionTest, MissingRightReferenceViolatesRightEquality) {
  Selection sel = shared;
  sel.y(1, slot_of(s, 2.5)) = 0;
  const FeasibilityReport r = check_selection(s, sel);
  EXPECT_TRUE(has_violation(r, 3, 1, slot_of(s, 2))) << r.describe();
}

TEST_F(FourUserSelectionTest, UtilizedViewMustBeTransmitted) {
  Selection sel = shared;
  sel.x[slot_of(s, 1)] = 0;
  const FeasibilityReport r = check_selection(s, sel);
  EXPECT_TRUE(has_violation(r, 5, 0, slot_of(s, 1))) << r.describe();
}

TEST_F(FourUserSelectionTest, NonBinaryEntriesAreReported) {
  Selection sel = shared;
  sel.x[slot_of(s, 3)] = 2;
  EXPECT_TRUE(has_violation(check_selection(s, sel), 1, -1, slot_of(s, 3)));
}

TEST(CheckSelectionTest, FeasibleSelectionsAreDirectOrOnePairPerUser) {
  GeneratorParams p;
  p.users = 4;
  p.views = 3;
  p.subdivision = 2;
  const Scenario s = generate_scenario(5, p);
  const int n = s.grid.size();
  // Every y-row with at most three ones, checked against the structural
  // characterization of feasibility.
  for (int k = 0; k < s.users(); ++k) {
    const View r = s.requests[k];
    const ViewWindows w = reference_windows(s.grid, r);
    for (int mask = 0; mask < (1 << n); ++mask) {
      Selection sel = Selection::empty(s);
      for (int j = 0; j < s.users(); ++j) {
        if (j != k) sel.y(j, s.grid.slot(s.requests[j])) = 1;
      }
      for (int b = 0; b < n; ++b) sel.y(k, b) = (mask >> b) & 1;
      derive_transmissions(sel);
      const bool direct = mask == (1 << s.grid.slot(r));
      bool pair = false;
      for (View l : w.left) {
        for (View rr : w.right) {
          if (mask == ((1 << s.grid.slot(l)) | (1 << s.grid.slot(rr)))) pair = true;
        }
      }
      EXPECT_EQ(check_selection(s, sel).ok(), direct || pair) << "user " << k << " mask " << mask;
    }
  }
}

TEST(CheckAllocationTest, UnusedViewWithZeroTimeIsFine) {
  const Scenario s = make_scenario(3, 2, 1.0, {2}, {1e-3});
  const Selection sel = make_selection(s, {{2}});
  Allocation a{std::vector<double>(s.grid.size(), 0.0), std::vector<double>(s.grid.size(), 0.0)};
  a.time_s[slot_of(s, 2)] = s.frame_s;
  a.power_w[slot_of(s, 2)] = s.noise_w / 1e-3 * std::expm1(std::log(2.0) * s.rate_bps / s.bandwidth_hz);
  EXPECT_TRUE(check_allocation(s, sel, a).ok()) << check_allocation(s, sel, a).describe();
}

TEST(CheckAllocationTest, SingleViewAtInvertedPowerIsTight) {
  const Scenario s = make_scenario(3, 2, 1.0, {2, 2}, {1e-3, 4e-3});
  const Selection sel = make_selection(s, {{2}, {2}});
  const int v = slot_of(s, 2);
  Allocation a{std::vector<double>(s.grid.size(), 0.0), std::vector<double>(s.grid.size(), 0.0)};
  a.time_s[v] = s.frame_s;
  a.power_w[v] = s.noise_w / 1e-3 * (std::pow(2.0, s.rate_bps / s.bandwidth_hz) - 1.0);
  EXPECT_TRUE(check_allocation(s, sel, a).ok());
  a.power_w[v] *= 1.0 - 1e-6;
  EXPECT_TRUE(has_violation(check_allocation(s, sel, a), 8, 0, v));
}

TEST(CheckAllocationTest, OverfullFrameViolatesFrameConstraint) {
  const Scenario s = make_scenario(3, 2, 1.0, {2}, {1e-3});
  const Selection sel = make_selection(s, {{2}});
  Allocation a{std::vector<double>(s.grid.size(), 0.0), std::vector<double>(s.grid.size(), 1.0)};
  a.time_s[slot_of(s, 2)] = 1.01 * s.frame_s;
  EXPECT_TRUE(has_violation(check_allocation(s, sel, a), 7, -1, -1));
  a.time_s[slot_of(s, 2)] = s.frame_s;
  a.time_s[slot_of(s, 1)] = -1e-3;
  EXPECT_TRUE(has_violation(check_allocation(s, sel, a), 6, -1, slot_of(s, 1)));
}

TEST(EnergyTest, DirectServiceHasNoSynthesisEnergy) {
  const Scenario s = make_scenario(4, 2, 1.0, {1, 2, 3}, {1e-3, 1e-3, 1e-3});
  const Selection sel = make_selection(s, {{1}, {2}, {3}});
  Allocation a{std::vector<double>(s.grid.size(), 0.0), std::vector<double>(s.grid.size(), 0.0)};
  for (double v : {1.0, 2.0, 3.0}) {
    a.time_s[slot_of(s, v)] = 0.03;
    a.power_w[slot_of(s, v)] = v;
  }
  const EnergyBreakdown e = energy(s, sel, a);
  EXPECT_EQ(e.server_synthesis_j, 0.0);
  EXPECT_EQ(e.user_synthesis_j, 0.0);
  EXPECT_DOUBLE_EQ(e.total_j, e.transmission_j);
  EXPECT_DOUBLE_EQ(e.transmission_j, 0.03 * 6.0);
}

TEST(EnergyTest, WeightedSumOfComponents) {
  // One synthesized view (1.5) carrying 1 J, used as a reference by two
  // synthesizing users; the third user is served directly with it.
  Scenario s = make_scenario(3, 2, 1.0, {1.5, 2, 2}, {1e-3, 1e-3, 1e-3});
  s.server_synthesis_j = 0.5;
  s.user_synthesis_j = {0.5, 0.5, 0.5};
  s.beta = 3.0;
  Selection sel = Selection::empty(s);
  sel.y(0, slot_of(s, 1.5)) = 1;
  sel.y(1, slot_of(s, 1.5)) = 1;
  sel.y(1, slot_of(s, 2.5)) = 1;
  sel.y(2, slot_of(s, 1.5)) = 1;
  sel.y(2, slot_of(s, 2.5)) = 1;
  derive_transmissions(sel);
  Allocation a{std::vector<double>(s.grid.size(), 0.0), std::vector<double>(s.grid.size(), 0.0)};
  a.time_s[slot_of(s, 1.5)] = 0.5;
  a.power_w[slot_of(s, 1.5)] = 2.0;
  const EnergyBreakdown e = energy(s, sel, a);
  // View 2.5 is synthesized too but carries no energy in this allocation.
  EXPECT_DOUBLE_EQ(e.transmission_j, 1.0);
  EXPECT_DOUBLE_EQ(e.server_synthesis_j, 1.0);
  EXPECT_DOUBLE_EQ(e.user_synthesis_j, 1.0);
  EXPECT_DOUBLE_EQ(e.total_j, 1.0 + 1.0 + 3.0 * 1.0);

  sel.x[slot_of(s, 2.5)] = 0;
  sel.y(1, slot_of(s, 2.5)) = 0;
  sel.y(2, slot_of(s, 2.5)) = 0;
  EXPECT_DOUBLE_EQ(energy(s, sel, a).total_j, 4.5);
}

TEST(EnergyTest, BetaScalesOnlyUserSynthesis) {
  Scenario s = make_scenario(3, 2, 1.0, {1.5}, {1e-3});
  s.server_synthesis_j = 0.25;
  s.user_synthesis_j = {0.5};
  const Selection sel = make_selection(s, {{1, 2}});
  Allocation a{std::vector<double>(s.grid.size(), 0.1), std::vector<double>(s.grid.size(), 1.0)};
  s.beta = 2.0;
  const EnergyBreakdown e1 = energy(s, sel, a);
  s.beta = 4.0;
  const EnergyBreakdown e2 = energy(s, sel, a);
  EXPECT_DOUBLE_EQ(e1.transmission_j, e2.transmission_j);
  EXPECT_DOUBLE_EQ(e1.server_synthesis_j, e2.server_synthesis_j);
  EXPECT_DOUBLE_EQ(e2.total_j - e1.total_j, 2.0 * 0.5);
}

TEST(EnergyTest, MonotoneInTransmissionProducts) {
  const Scenario s = generate_scenario(11, GeneratorParams{});
  const Selection sel = random_feasible_selection(s, 12);
  Allocation a{std::vector<double>(s.grid.size(), 0.01), std::vector<double>(s.grid.size(), 0.5)};
  const double base = energy(s, sel, a).total_j;
  for (int v = 0; v < s.grid.size(); ++v) {
    Allocation b = a;
    b.power_w[v] *= 1.5;
    EXPECT_GE(energy(s, sel, b).total_j, base);
  }
}

TEST(ScenarioTest, ValidateNamesTheField) {
  Scenario s = make_scenario(3, 2, 1.0, {1.5}, {1e-3});
  s.beta = 0.5;
  try {
    s.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
  }
  s.beta = 3.0;
  s.channels = {0.0};
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(ThermalNoiseTest, MatchesBoltzmannTimesRoomTemperature) {
  EXPECT_DOUBLE_EQ(thermal_noise(1e7), 1e7 * 1.38e-23 * 300.0);
}

}  // namespace
}  // namespace vsmc
