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

#include "vsmc/candidate_sets.hpp"

#include <algorithm>
#include <set>

#include "vsmc/errors.hpp"

namespace vsmc {

namespace {

void sort_unique(std::vector<View>& views) {
  std::sort(views.begin(), views.end());
  views.erase(std::unique(views.begin(), views.end()), views.end());
}

std::vector<View> in_grid(const ViewGrid& grid, std::initializer_list<int> indices) {
  std::vector<View> out;
  for (int g : indices) {
    if (grid.contains(View{g})) out.push_back(View{g});
  }
  return out;
}

}  // namespace

PairCase classify_pair(const ViewGrid& grid, View ra, View rb) {
  const View lo = std::min(ra, rb);
  const View hi = std::max(ra, rb);
  const int d = grid.reach_steps();
  // hi inside the right window of lo. Adjacent requests also have an empty
  // window overlap; this case takes precedence.
  if (hi.g > lo.g && hi.g <= lo.g + d) return PairCase::kAdjacent;
  // Right window of lo is (lo, lo+d], left window of hi is [hi-d, hi).
  const int first = std::max(lo.g + 1, hi.g - d);
  const int last = std::min(lo.g + d, hi.g - 1);
  if (first > last) return PairCase::kDisjoint;
  return PairCase::kOverlap;
}

std::vector<View> pairwise_candidates(const Scenario& scenario, int a, int b) {
  if (a == b) throw PreconditionError("pairwise_candidates requires two distinct users");
  const ViewGrid& grid = scenario.grid;
  const View ra = scenario.requests[a];
  const View rb = scenario.requests[b];
  const View lo = std::min(ra, rb);
  const View hi = std::max(ra, rb);
  const int d = grid.reach_steps();
  std::vector<View> out;
  switch (classify_pair(grid, ra, rb)) {
    case PairCase::kDisjoint:
      out = {ra};
      break;
    case PairCase::kOverlap: {
      out = in_grid(grid, {ra.g, hi.g - d, lo.g + d});
      const int first = std::max(lo.g + 1, hi.g - d);
      const int last = std::min(lo.g + d, hi.g - 1);
      for (int g = first; g <= last; ++g) {
        if (grid.contains(View{g}) && grid.is_original(View{g})) out.push_back(View{g});
      }
      break;
    }
    case PairCase::kAdjacent:
      out = in_grid(grid, {ra.g, rb.g, hi.g - d, lo.g + d});
      break;
  }
  sort_unique(out);
  return out;
}

std::vector<View> user_candidates(const Scenario& scenario, int k) {
  std::vector<View> out;
  if (scenario.users() == 1) {
    const View r = scenario.requests[k];
    const ViewWindows w = reference_windows(scenario.grid, r);
    out = w.left;
    out.push_back(r);
    out.insert(out.end(), w.right.begin(), w.right.end());
    return out;
  }
  for (int i = 0; i < scenario.users(); ++i) {
    if (i == k) continue;
    const auto part = pairwise_candidates(scenario, k, i);
    out.insert(out.end(), part.begin(), part.end());
  }
  sort_unique(out);
  return out;
}

bool pruning_hypothesis_holds(const Scenario& scenario) {
  return std::all_of(scenario.user_synthesis_j.begin(), scenario.user_synthesis_j.end(),
                     [&](double eu) { return scenario.beta * eu >= scenario.server_synthesis_j; });
}

UserChoices enumerate_user_choices(const Scenario& scenario, int k, bool allow_pruning) {
  UserChoices out;
  out.pruned = allow_pruning && pruning_hypothesis_holds(scenario);
  const View r = scenario.requests[k];
  ViewWindows w = reference_windows(scenario.grid, r);
  if (out.pruned) {
    const auto allowed = user_candidates(scenario, k);
    const auto keep = [&](std::vector<View>& side) {
      std::erase_if(side, [&](View v) { return !std::binary_search(allowed.begin(), allowed.end(), v); });
    };
    keep(w.left);
    keep(w.right);
  }
  out.choices.push_back(UserChoice::direct());
  for (View l : w.left) {
    for (View rr : w.right) out.choices.push_back(UserChoice::pair(l, rr));
  }
  return out;
}

void apply_choice(const Scenario& scenario, int k, const UserChoice& choice, Selection& selection) {
  const ViewGrid& grid = scenario.grid;
  if (choice.is_direct()) {
    selection.y(k, grid.slot(scenario.requests[k])) = 1;
  } else {
    selection.y(k, grid.slot(choice.left)) = 1;
    selection.y(k, grid.slot(choice.right)) = 1;
  }
}

}  // namespace vsmc
