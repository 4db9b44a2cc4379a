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


#include <string>

#include <gtest/gtest.h>

#include "vsmc/config.hpp"
#include "vsmc/errors.hpp"

namespace vsmc {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ParseConfigTest, MinimalConfigTakesStudyDefaults) {
  const RunConfig c = parse_config(R"({"K": 6, "B_hz": 5e6, "T_s": 0.05})");
  const Scenario s = c.scenario();
  EXPECT_EQ(s.users(), 6);
  EXPECT_EQ(s.bandwidth_hz, 5e6);
  EXPECT_EQ(s.frame_s, 0.05);
  EXPECT_EQ(s.grid, ViewGrid(5, 10, 1.0));
  EXPECT_EQ(s.rate_bps, 1e7);
  EXPECT_EQ(s.beta, 3.0);
  EXPECT_EQ(s.server_synthesis_j, 5e-7);
  EXPECT_EQ(s.user_synthesis_j, std::vector<double>(6, 5e-7));
  EXPECT_DOUBLE_EQ(s.noise_w, 5e6 * 1.38e-23 * 300.0);
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(ParseConfigTest, OffGridRequestIsInvalidView) {
  EXPECT_THROW(parse_config(R"({"requests": [2.55, 3], "channels": [1e-3, 1e-3]})"), InvalidViewError);
}

TEST(ParseConfigTest, ReachBelowOneIsSchemaError) {
  EXPECT_THROW(parse_config(R"({"delta": 0.5})"), ConfigError);
  EXPECT_NE(error_of(R"({"delta": 0.5})").find("delta"), std::string::npos);
}

TEST(ParseConfigTest, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"K": "ten"})").find("K"), std::string::npos);
  EXPECT_NE(error_of(R"({"bandwidth": 1e7})").find("bandwidth: unknown key"), std::string::npos);
  EXPECT_NE(error_of(R"({"sweep": {"trials": 0}})").find("sweep.trials"), std::string::npos);
  EXPECT_NE(error_of(R"({"dc": {"rho": -1}})").find("dc.rho"), std::string::npos);
  EXPECT_NE(error_of(R"({"requests": [1]})").find("requests"), std::string::npos);
  EXPECT_NE(error_of(R"({"beta": 0.5})").find("beta"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("JSON"), std::string::npos);
}

TEST(ParseConfigTest, ExplicitInstance) {
  const RunConfig c = parse_config(R"({
    "V": 4, "Q": 2, "E_b_J": 0, "E_u_J": [0, 1e-7],
    "requests": [1.5, 4], "channels": [2e-3, 1e-3]})");
  const Scenario s = c.scenario();
  EXPECT_EQ(s.users(), 2);
  EXPECT_EQ(s.grid.value(s.requests[0]), 1.5);
  EXPECT_EQ(s.channels, (std::vector<double>{2e-3, 1e-3}));
  EXPECT_EQ(s.user_synthesis_j, (std::vector<double>{0, 1e-7}));
}

TEST(ParseConfigTest, SweepDefaults) {
  const RunConfig c = parse_config(R"({"seed": 9, "sweep": {"parameter": "B"}})");
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->values, (std::vector<double>{5e6, 10e6, 15e6, 20e6}));
  EXPECT_EQ(c.sweep->trials, 100);
  EXPECT_EQ(c.sweep->base_seed, 9u);
  EXPECT_EQ(c.sweep->schemes,
            (std::vector<Scheme>{Scheme::kRelax, Scheme::kDc, Scheme::kBaseline1, Scheme::kBaseline2}));
}

TEST(ParseConfigTest, DcOverrides) {
  const RunConfig c = parse_config(R"({"dc": {"rho": 2.5, "tol": 1e-4, "max_iter": 7}})");
  EXPECT_EQ(*c.dc.rho, 2.5);
  EXPECT_EQ(c.dc.tolerance, 1e-4);
  EXPECT_EQ(c.dc.max_iterations, 7);
}

TEST(ScenarioJsonTest, RoundTrip) {
  const RunConfig c = parse_config(R"({"K": 4, "seed": 3})");
  const Scenario s = c.scenario();
  const Scenario back = parse_config(scenario_to_json(s)).scenario();
  EXPECT_EQ(back.grid, s.grid);
  EXPECT_EQ(back.requests, s.requests);
  EXPECT_EQ(back.channels, s.channels);
  EXPECT_EQ(back.noise_w, s.noise_w);
  EXPECT_EQ(back.user_synthesis_j, s.user_synthesis_j);
}

}  // namespace
}  // namespace vsmc
