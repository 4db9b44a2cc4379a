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

// Fast self-check of the library's invariants on small random instances,
// used by `vsmc validate`.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace vsmc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 2026);

// One line per check; returns true when every check passed.
bool print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace vsmc
