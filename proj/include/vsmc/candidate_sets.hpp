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

// Reduced search space for the exact solver. For a pair of users (a, b) the
// set U_{a,b} holds the views user a may end up utilizing when only a and b
// are considered; U_k unions those over all other users. Restricting every
// user's references to U_k loses no optimality whenever beta*E_u,k >= E_b.

#include <vector>

#include "vsmc/model.hpp"

namespace vsmc {

enum class PairCase { kDisjoint = 1, kOverlap = 2, kAdjacent = 3 };

PairCase classify_pair(const ViewGrid& grid, View ra, View rb);

// U_{a,b}, sorted ascending, clipped to the grid. Requires a != b.
std::vector<View> pairwise_candidates(const Scenario& scenario, int a, int b);

// U_k. For a single-user scenario this is {r_k} plus both full windows.
std::vector<View> user_candidates(const Scenario& scenario, int k);

struct UserChoice {
  enum class Kind { kDirect, kSynthPair };
  Kind kind = Kind::kDirect;
  View left{};
  View right{};

  static UserChoice direct() { return {}; }
  static UserChoice pair(View l, View r) { return {Kind::kSynthPair, l, r}; }
  bool is_direct() const { return kind == Kind::kDirect; }
  friend bool operator==(const UserChoice&, const UserChoice&) = default;
};

struct UserChoices {
  std::vector<UserChoice> choices;  // Direct first, then pairs by (left, right)
  bool pruned = true;               // false when the full windows were used
};

// True when beta*E_u,k >= E_b holds for every user.
bool pruning_hypothesis_holds(const Scenario& scenario);

// Options of user k restricted to U_k. Falls back to the full windows (with
// pruned = false) when the pruning hypothesis fails or `allow_pruning` is off.
UserChoices enumerate_user_choices(const Scenario& scenario, int k, bool allow_pruning = true);

// Writes the y-row of user k realizing `choice` (row must be zeroed).
void apply_choice(const Scenario& scenario, int k, const UserChoice& choice, Selection& selection);

}  // namespace vsmc
