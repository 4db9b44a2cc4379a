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

// Exhaustive search over per-user choices (direct service or a left/right
// reference pair), with the optimal time/power allocation evaluated for each
// candidate. Allocation results are memoized on the multiset of per-view
// worst channels, which is all the allocation depends on.

#include <cstdint>
#include <vector>

#include "vsmc/candidate_sets.hpp"
#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

struct ExactOptions {
  int threads = 0;            // 0: default_thread_count()
  bool allow_pruning = true;  // restrict references to U_k
};

// Minimum over the reduced family; ties broken toward the lexicographically
// smallest y. OpenMP-parallel over contiguous candidate chunks.
Solution solve_exact(const Scenario& scenario, const ExactOptions& options = {});

// Single-threaded reference of solve_exact; same result bit for bit.
Solution solve_exact_serial(const Scenario& scenario);

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

// Same search over the unpruned family (full reference windows). Throws
// InstanceTooLargeError when the candidate count exceeds `limit`.
Solution solve_brute(const Scenario& scenario, std::uint64_t limit = kBruteForceLimit);

// Number of candidates in the cross product of the given per-user lists,
// saturating at UINT64_MAX.
std::uint64_t family_size(const std::vector<UserChoices>& lists);

// Thread count used when an option asks for the default: VSMC_THREADS if set,
// else the OpenMP maximum.
int default_thread_count();

}  // namespace vsmc
