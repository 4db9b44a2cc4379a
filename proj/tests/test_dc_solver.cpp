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


#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vsmc/allocator.hpp"
#include "vsmc/dc_solver.hpp"
#include "vsmc/errors.hpp"
#include "vsmc/exact_solver.hpp"
#include "vsmc/experiments.hpp"
#include "vsmc/relax_round.hpp"

namespace vsmc {
namespace {

using testing::make_scenario;
using testing::relative_error;

UserViewMatrix<double> filled(int users, int views, double value) {
  return UserViewMatrix<double>(users, views, value);
}

TEST(PenaltyTest, Examples) {
  UserViewMatrix<double> binary(2, 3, 0.0);
  binary(0, 1) = 1.0;
  binary(1, 2) = 1.0;
  EXPECT_EQ(penalty(binary), 0.0);
  EXPECT_DOUBLE_EQ(penalty(filled(2, 3, 0.5)), 0.25 * 6);
  EXPECT_DOUBLE_EQ(penalty(filled(1, 1, 0.3)), 0.21);
}

TEST(LinearizedPenaltyTest, ExactAtExpansionPoint) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  UserViewMatrix<double> y(3, 5, 0.0);
  for (double& v : y.data()) v = u(rng);
  EXPECT_NEAR(linearized_penalty(y, y).value, penalty(y), 1e-14);
}

TEST(LinearizedPenaltyTest, BinaryExpansionPoint) {
  UserViewMatrix<double> prev(2, 3, 0.0);
  prev(0, 0) = 1.0;
  prev(1, 1) = 1.0;
  prev(1, 2) = 1.0;
  const LinearizedPenalty lin = linearized_penalty(prev, prev);
  for (double c : lin.coefficients.data()) EXPECT_TRUE(c == 1.0 || c == -1.0);
  EXPECT_EQ(lin.constant, 3.0);
}

TEST(LinearizedPenaltyTest, FlatAtOneHalf) {
  const UserViewMatrix<double> prev = filled(2, 4, 0.5);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    UserViewMatrix<double> y(2, 4, 0.0);
    for (double& v : y.data()) v = u(rng);
    const LinearizedPenalty lin = linearized_penalty(y, prev);
    for (double c : lin.coefficients.data()) EXPECT_EQ(c, 0.0);
    EXPECT_DOUBLE_EQ(lin.value, 0.25 * 8);
    EXPECT_GE(lin.value, penalty(y));
  }
}

TEST(LinearizedPenaltyTest, MajorizesPenalty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    UserViewMatrix<double> y(3, 4, 0.0);
    UserViewMatrix<double> prev(3, 4, 0.0);
    for (double& v : y.data()) v = u(rng);
    for (double& v : prev.data()) v = trial % 3 == 0 ? std::round(u(rng)) : u(rng);
    EXPECT_GE(linearized_penalty(y, prev).value, penalty(y) - 1e-15);
  }
}

TEST(DefaultPenaltyWeightTest, TenTimesSynthesisPlusDirectEnergy) {
  const Scenario s = make_scenario(3, 2, 1.0, {1.5, 2}, {1e-3, 2e-3});
  Selection direct = Selection::empty(s);
  direct.y(0, s.grid.slot(s.requests[0])) = 1;
  direct.y(1, s.grid.slot(s.requests[1])) = 1;
  derive_transmissions(direct);
  const double e = complete_solution(s, direct, "direct").energy.total_j;
  EXPECT_LT(relative_error(default_penalty_weight(s), 10.0 * (5e-7 + 3.0 * 5e-7 + e)), 1e-14);
}

TEST(RunDcTest, RejectsNonPositivePenalty) {
  const Scenario s = make_scenario(3, 2, 1.0, {1.5}, {1e-3});
  DcOptions o;
  o.rho = 0.0;
  EXPECT_THROW(run_dc(s, o), PreconditionError);
}

TEST(RunDcTest, BinaryOptimumIsAFixedPoint) {
  GeneratorParams p;
  p.users = 3;
  for (int seed = 0; seed < 5; ++seed) {
    const Scenario s = generate_scenario(20 + seed, p);
    const Solution exact = solve_exact(s);
    UserViewMatrix<double> y(s.users(), s.grid.size(), 0.0);
    for (std::size_t i = 0; i < y.data().size(); ++i) y.data()[i] = exact.selection.y.data()[i];
    DcOptions o;
    o.keep_incumbent = false;
    const DcResult r = run_dc(s, o, &y);
    EXPECT_EQ(r.iterations, 1) << "seed " << seed;
    EXPECT_TRUE(r.binary_converged);
    EXPECT_EQ(r.solution.selection.y, exact.selection.y);
  }
}

TEST(RunDcTest, PenalizedObjectiveDescends) {
  GeneratorParams p;
  for (int seed = 0; seed < 10; ++seed) {
    p.users = 2 + seed;
    const Scenario s = generate_scenario(30 + seed, p);
    DcOptions o;
    o.max_rho_doublings = 0;
    const DcResult r = run_dc(s, o);
    ASSERT_GE(r.history_j.size(), 2u);
    for (std::size_t i = 1; i < r.history_j.size(); ++i) {
      EXPECT_LE(r.history_j[i], r.history_j[i - 1] + 1e-9) << "seed " << seed << " iteration " << i;
    }
  }
}

TEST(RunDcTest, OutputIsFeasibleAndFlagged) {
  GeneratorParams p;
  p.users = 10;
  for (int seed = 0; seed < 5; ++seed) {
    const Scenario s = generate_scenario(40 + seed, p);
    const DcResult r = run_dc(s);
    EXPECT_TRUE(check_selection(s, r.solution.selection).ok());
    EXPECT_TRUE(check_allocation(s, r.solution.selection, r.solution.allocation).ok());
    const auto& flags = r.solution.diagnostics.flags;
    const bool flagged = std::find(flags.begin(), flags.end(), "dc_nonbinary") != flags.end();
    EXPECT_EQ(flagged, !r.binary_converged);
    EXPECT_GE(r.rho_j, default_penalty_weight(s));
  }
}

TEST(SolveDcTest, BoundedByExactAndNoWorseThanRelaxationOnAverage) {
  GeneratorParams p;
  double dc_sum = 0.0;
  double relax_sum = 0.0;
  for (int seed = 0; seed < 30; ++seed) {
    p.users = 1 + seed % 3;
    const Scenario s = generate_scenario(50 + seed, p);
    const double dc = solve_dc(s).energy.total_j;
    EXPECT_GE(dc, solve_exact(s).energy.total_j * (1.0 - 1e-12));
    dc_sum += dc;
    relax_sum += solve_relax_round(s).energy.total_j;
  }
  EXPECT_LE(dc_sum, relax_sum);
}

}  // namespace
}  // namespace vsmc
