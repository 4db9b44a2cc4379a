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

#include "vsmc/exact_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vsmc/allocator.hpp"
#include "vsmc/errors.hpp"

namespace vsmc {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<double>& key) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (double v : key) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      h ^= bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Slots a user touches under one choice, ascending.
struct ChoiceSlots {
  int count = 1;
  int slot[2] = {0, 0};
  bool synthesizes = false;
};

// Row-wise lexicographic order of the indicator vectors: the row whose
// smallest non-shared slot comes first is the larger one.
int compare_rows(const ChoiceSlots& a, const ChoiceSlots& b) {
  int i = 0, j = 0;
  while (i < a.count && j < b.count) {
    if (a.slot[i] == b.slot[j]) {
      ++i;
      ++j;
    } else {
      return a.slot[i] < b.slot[j] ? 1 : -1;
    }
  }
  if (i < a.count) return 1;
  if (j < b.count) return -1;
  return 0;
}

struct Best {
  double energy = std::numeric_limits<double>::infinity();
  std::vector<int> choice;  // index into each user's list
};

class CandidateEvaluator {
 public:
  CandidateEvaluator(const Scenario& scenario, const std::vector<UserChoices>& lists)
      : scenario_(scenario), worst_(scenario.grid.size(), kUnused) {
    const ViewGrid& grid = scenario.grid;
    slots_.resize(lists.size());
    for (std::size_t k = 0; k < lists.size(); ++k) {
      for (const UserChoice& c : lists[k].choices) {
        ChoiceSlots cs;
        if (c.is_direct()) {
          cs.slot[0] = grid.slot(scenario.requests[k]);
        } else {
          cs.count = 2;
          cs.slot[0] = grid.slot(c.left);
          cs.slot[1] = grid.slot(c.right);
          cs.synthesizes = true;
        }
        slots_[k].push_back(cs);
      }
    }
  }

  const std::vector<std::vector<ChoiceSlots>>& slots() const { return slots_; }

  double evaluate(const std::vector<int>& choice) {
    const ViewGrid& grid = scenario_.grid;
    touched_.clear();
    double user_cost = 0.0;
    for (std::size_t k = 0; k < choice.size(); ++k) {
      const ChoiceSlots& cs = slots_[k][choice[k]];
      for (int i = 0; i < cs.count; ++i) {
        double& w = worst_[cs.slot[i]];
        if (w == kUnused) touched_.push_back(cs.slot[i]);
        w = std::min(w, scenario_.channels[k]);
      }
      if (cs.synthesizes) user_cost += scenario_.user_synthesis_j[k];
    }
    key_.clear();
    int synthesized = 0;
    for (int s : touched_) {
      key_.push_back(worst_[s]);
      worst_[s] = kUnused;
      if (!grid.is_original(grid.at(s))) ++synthesized;
    }
    std::sort(key_.begin(), key_.end());
    double transmission;
    if (auto it = memo_.find(key_); it != memo_.end()) {
      transmission = it->second;
    } else {
      transmission = share_frame(scenario_, key_).energy_j;
      memo_.emplace(key_, transmission);
    }
    return transmission + scenario_.server_synthesis_j * synthesized + scenario_.beta * user_cost;
  }

  // True when candidate a precedes b: lower energy, then smaller y.
  bool better(double ea, const std::vector<int>& a, double eb, const std::vector<int>& b) const {
    if (ea != eb) return ea < eb;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const int c = compare_rows(slots_[k][a[k]], slots_[k][b[k]]);
      if (c != 0) return c < 0;
    }
    return false;
  }

 private:
  static constexpr double kUnused = std::numeric_limits<double>::infinity();
  const Scenario& scenario_;
  std::vector<std::vector<ChoiceSlots>> slots_;
  std::vector<double> worst_;
  std::vector<int> touched_;
  std::vector<double> key_;
  std::unordered_map<std::vector<double>, double, KeyHash> memo_;
};

void decode(std::uint64_t index, const std::vector<UserChoices>& lists, std::vector<int>& choice) {
  for (std::size_t k = lists.size(); k-- > 0;) {
    const std::uint64_t n = lists[k].choices.size();
    choice[k] = static_cast<int>(index % n);
    index /= n;
  }
}

void advance(const std::vector<UserChoices>& lists, std::vector<int>& choice) {
  for (std::size_t k = lists.size(); k-- > 0;) {
    if (++choice[k] < static_cast<int>(lists[k].choices.size())) return;
    choice[k] = 0;
  }
}

Best search_range(CandidateEvaluator& eval, const std::vector<UserChoices>& lists,
                  std::uint64_t begin, std::uint64_t end) {
  Best best;
  if (begin >= end) return best;
  std::vector<int> choice(lists.size(), 0);
  decode(begin, lists, choice);
  for (std::uint64_t i = begin; i < end; ++i) {
    const double e = eval.evaluate(choice);
    if (best.choice.empty() || eval.better(e, choice, best.energy, best.choice)) {
      best.energy = e;
      best.choice = choice;
    }
    advance(lists, choice);
  }
  return best;
}

Solution finish(const Scenario& scenario, const std::vector<UserChoices>& lists, const Best& best,
                std::uint64_t candidates, std::chrono::steady_clock::time_point start,
                const char* tag) {
  Selection selection = Selection::empty(scenario);
  for (int k = 0; k < scenario.users(); ++k) {
    apply_choice(scenario, k, lists[k].choices[best.choice[k]], selection);
  }
  derive_transmissions(selection);
  Solution out = complete_solution(scenario, std::move(selection), tag);
  out.diagnostics.candidates = candidates;
  if (std::any_of(lists.begin(), lists.end(), [](const UserChoices& l) { return !l.pruned; }) &&
      std::string_view(tag) == "exact") {
    out.diagnostics.flags.push_back("unpruned");
  }
  out.diagnostics.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<UserChoices> choice_lists(const Scenario& scenario, bool allow_pruning) {
  std::vector<UserChoices> lists;
  for (int k = 0; k < scenario.users(); ++k) {
    lists.push_back(enumerate_user_choices(scenario, k, allow_pruning));
  }
  return lists;
}

Best search_parallel(const Scenario& scenario, const std::vector<UserChoices>& lists,
                     std::uint64_t total, int threads) {
  std::vector<Best> partial(static_cast<std::size_t>(std::max(threads, 1)));
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
  {
    const int tid = omp_get_thread_num();
    const int nth = omp_get_num_threads();
#else
  {
    const int tid = 0;
    const int nth = 1;
#endif
    CandidateEvaluator eval(scenario, lists);
    const std::uint64_t begin = total / nth * tid + std::min<std::uint64_t>(tid, total % nth);
    const std::uint64_t size = total / nth + (static_cast<std::uint64_t>(tid) < total % nth ? 1 : 0);
    partial[tid] = search_range(eval, lists, begin, begin + size);
  }
  CandidateEvaluator ranker(scenario, lists);
  Best best;
  for (const Best& b : partial) {
    if (b.choice.empty()) continue;
    if (best.choice.empty() || ranker.better(b.energy, b.choice, best.energy, best.choice)) best = b;
  }
  return best;
}

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("VSMC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::uint64_t family_size(const std::vector<UserChoices>& lists) {
  std::uint64_t total = 1;
  for (const auto& l : lists) {
    const std::uint64_t n = l.choices.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= n;
  }
  return total;
}

Solution solve_exact(const Scenario& scenario, const ExactOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto lists = choice_lists(scenario, options.allow_pruning);
  const std::uint64_t total = family_size(lists);
  const int threads = options.threads > 0 ? options.threads : default_thread_count();
  const Best best = search_parallel(scenario, lists, total, threads);
  return finish(scenario, lists, best, total, start, "exact");
}

Solution solve_exact_serial(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  const auto lists = choice_lists(scenario, true);
  const std::uint64_t total = family_size(lists);
  CandidateEvaluator eval(scenario, lists);
  const Best best = search_range(eval, lists, 0, total);
  return finish(scenario, lists, best, total, start, "exact");
}

Solution solve_brute(const Scenario& scenario, std::uint64_t limit) {
  const auto start = std::chrono::steady_clock::now();
  const auto lists = choice_lists(scenario, false);
  const std::uint64_t total = family_size(lists);
  if (total > limit) {
    throw InstanceTooLargeError("brute force family has more than " + std::to_string(limit) +
                                " candidates");
  }
  CandidateEvaluator eval(scenario, lists);
  const Best best = search_range(eval, lists, 0, total);
  return finish(scenario, lists, best, total, start, "brute");
}

}  // namespace vsmc
