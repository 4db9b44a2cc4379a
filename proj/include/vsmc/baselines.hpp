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

#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

// Server-side synthesis only: every requested view is transmitted directly.
Solution baseline1(const Scenario& scenario);

// User-side synthesis only: the nearest original views around each request
// are transmitted; users with an original request are served directly.
Solution baseline2(const Scenario& scenario);

}  // namespace vsmc
