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

#include "vsmc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include <fmt/format.h>

#include "vsmc/baselines.hpp"
#include "vsmc/errors.hpp"
#include "vsmc/exact_solver.hpp"
#include "vsmc/relax_round.hpp"

namespace vsmc {

namespace {

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

GeneratorParams at_sweep_point(const SweepSpec& spec, double value) {
  GeneratorParams p = spec.base;
  switch (spec.parameter) {
    case SweepParameter::kUsers:
      p.users = static_cast<int>(std::lround(value));
      break;
    case SweepParameter::kBandwidth:
      p.bandwidth_hz = value;
      break;
    case SweepParameter::kFrame:
      p.frame_s = value;
      break;
  }
  return p;
}

std::vector<TrialRecord> run_trial(const SweepSpec& spec, const GeneratorParams& params,
                                   std::uint64_t seed) {
  std::vector<TrialRecord> out;
  const Scenario scenario = generate_scenario(seed, params);
  for (Scheme scheme : spec.schemes) {
    TrialRecord rec;
    rec.seed = seed;
    rec.users = scenario.users();
    rec.bandwidth_hz = scenario.bandwidth_hz;
    rec.frame_s = scenario.frame_s;
    rec.scheme = to_string(scheme);
    const auto start = std::chrono::steady_clock::now();
    try {
      const Solution sol = run_scheme(scenario, scheme, spec.dc);
      rec.energy = sol.energy;
      rec.views_transmitted = sol.selection.transmitted_count();
      rec.flags = sol.diagnostics.flags;
    } catch (const Error& e) {
      rec.flags.push_back("failed");
    }
    rec.solve_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(rec));
  }
  return out;
}

void check_spec(const SweepSpec& spec) {
  if (spec.trials < 1) throw ConfigError("sweep.trials must be >= 1");
  if (spec.schemes.empty()) throw ConfigError("sweep.schemes must not be empty");
  if (spec.values.empty()) throw ConfigError("sweep.values must not be empty");
  for (double v : spec.values) at_sweep_point(spec, v).validate();
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

}  // namespace

void GeneratorParams::validate() const {
  if (users < 1) throw ConfigError(fmt::format("K must be >= 1 (got {})", users));
  (void)ViewGrid(views, subdivision, delta);
  const auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(fmt::format("{} must be a finite positive number (got {})", field, v));
    }
  };
  positive(rate_bps, "R_bps");
  positive(frame_s, "T_s");
  positive(bandwidth_hz, "B_hz");
  positive(channel_mean, "channel_mean");
  if (noise_w) positive(*noise_w, "n0_W");
  if (!(server_synthesis_j >= 0.0)) throw ConfigError("E_b_J must be >= 0");
  if (!(user_synthesis_j >= 0.0)) throw ConfigError("E_u_J must be >= 0");
  if (!(beta >= 1.0)) throw ConfigError(fmt::format("beta must be >= 1 (got {})", beta));
}

Scenario generate_scenario(std::uint64_t seed, const GeneratorParams& params) {
  params.validate();
  Scenario s;
  s.grid = ViewGrid(params.views, params.subdivision, params.delta);
  s.rate_bps = params.rate_bps;
  s.frame_s = params.frame_s;
  s.bandwidth_hz = params.bandwidth_hz;
  s.noise_w = params.noise_w.value_or(thermal_noise(params.bandwidth_hz));
  s.server_synthesis_j = params.server_synthesis_j;
  s.beta = params.beta;
  s.user_synthesis_j.assign(params.users, params.user_synthesis_j);

  std::mt19937_64 rng(seed);
  for (int k = 0; k < params.users; ++k) {
    s.channels.push_back(-params.channel_mean * std::log1p(-unit_interval(rng)));
  }
  const int n = s.grid.size();
  for (int k = 0; k < params.users; ++k) {
    const int slot = std::min(n - 1, static_cast<int>(unit_interval(rng) * n));
    s.requests.push_back(s.grid.at(slot));
  }
  // A zero draw (probability 2^-53) would give h = 0.
  for (double& h : s.channels) h = std::max(h, 1e-300);
  s.validate();
  return s;
}

Selection random_feasible_selection(const Scenario& scenario, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ViewGrid& grid = scenario.grid;
  Selection sel = Selection::empty(scenario);
  for (int k = 0; k < scenario.users(); ++k) {
    const View r = scenario.requests[k];
    const ViewWindows w = reference_windows(grid, r);
    const bool synthesize = !w.left.empty() && !w.right.empty() && unit_interval(rng) < 0.5;
    if (!synthesize) {
      sel.y(k, grid.slot(r)) = 1;
      continue;
    }
    const auto pick = [&](const std::vector<View>& views) {
      const auto i = std::min(views.size() - 1, static_cast<std::size_t>(unit_interval(rng) * views.size()));
      return views[i];
    };
    sel.y(k, grid.slot(pick(w.left))) = 1;
    sel.y(k, grid.slot(pick(w.right))) = 1;
  }
  derive_transmissions(sel);
  return sel;
}

Scenario four_user_example() {
  Scenario s;
  s.grid = ViewGrid(4, 2, 1.0);
  for (int v = 1; v <= 4; ++v) s.requests.push_back(s.grid.parse(v));
  s.channels.assign(4, 1e-3);
  s.noise_w = thermal_noise(s.bandwidth_hz);
  s.server_synthesis_j = 0.0;
  s.user_synthesis_j.assign(4, 0.0);
  s.validate();
  return s;
}

Selection four_user_example_selection(const Scenario& s) {
  Selection sel = Selection::empty(s);
  const auto at = [&](double v) { return s.grid.slot(s.grid.parse(v)); };
  sel.y(0, at(1)) = 1;
  sel.y(1, at(1)) = 1;
  sel.y(1, at(2.5)) = 1;
  sel.y(2, at(2.5)) = 1;
  sel.y(2, at(4)) = 1;
  sel.y(3, at(4)) = 1;
  derive_transmissions(sel);
  return sel;
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kExact: return "exact";
    case Scheme::kBrute: return "brute";
    case Scheme::kRelax: return "relax";
    case Scheme::kDc: return "dc";
    case Scheme::kBaseline1: return "baseline1";
    case Scheme::kBaseline2: return "baseline2";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  static const std::map<std::string, Scheme> names{
      {"exact", Scheme::kExact},         {"brute", Scheme::kBrute},
      {"relax", Scheme::kRelax},         {"dc", Scheme::kDc},
      {"baseline1", Scheme::kBaseline1}, {"baseline2", Scheme::kBaseline2}};
  const auto it = names.find(name);
  if (it == names.end()) throw ConfigError(fmt::format("unknown scheme '{}'", name));
  return it->second;
}

Solution run_scheme(const Scenario& scenario, Scheme scheme, const DcOptions& dc) {
  switch (scheme) {
    case Scheme::kExact: return solve_exact(scenario);
    case Scheme::kBrute: return solve_brute(scenario);
    case Scheme::kRelax: return solve_relax_round(scenario, dc.convex);
    case Scheme::kDc: return solve_dc(scenario, dc);
    case Scheme::kBaseline1: return baseline1(scenario);
    case Scheme::kBaseline2: return baseline2(scenario);
  }
  throw PreconditionError("unknown scheme");
}

std::string to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kUsers: return "K";
    case SweepParameter::kBandwidth: return "B";
    case SweepParameter::kFrame: return "T";
  }
  return "unknown";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "K") return SweepParameter::kUsers;
  if (name == "B") return SweepParameter::kBandwidth;
  if (name == "T") return SweepParameter::kFrame;
  throw ConfigError(fmt::format("sweep.parameter must be one of K, B, T (got '{}')", name));
}

bool TrialRecord::failed() const {
  return std::find(flags.begin(), flags.end(), "failed") != flags.end();
}

std::vector<TrialRecord> run_sweep(const SweepSpec& spec) {
  check_spec(spec);
  const int values = static_cast<int>(spec.values.size());
  const int tasks = values * spec.trials;
  std::vector<std::vector<TrialRecord>> results(tasks);
  const int threads = spec.threads > 0 ? spec.threads : default_thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int task = 0; task < tasks; ++task) {
    const int v = task / spec.trials;
    const int trial = task % spec.trials;
    results[task] = run_trial(spec, at_sweep_point(spec, spec.values[v]), spec.base_seed + trial);
  }
  std::vector<TrialRecord> out;
  out.reserve(static_cast<std::size_t>(tasks) * spec.schemes.size());
  for (auto& r : results) {
    for (auto& rec : r) out.push_back(std::move(rec));
  }
  return out;
}

std::vector<TrialRecord> run_sweep_serial(const SweepSpec& spec) {
  check_spec(spec);
  std::vector<TrialRecord> out;
  for (double value : spec.values) {
    const GeneratorParams params = at_sweep_point(spec, value);
    for (int trial = 0; trial < spec.trials; ++trial) {
      for (auto& rec : run_trial(spec, params, spec.base_seed + trial)) out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw PreconditionError("summarize needs at least one record");
  using Key = std::tuple<std::string, int, double, double>;
  std::map<Key, std::size_t> index;
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> energies;
  std::vector<double> time_sum;
  for (const auto& rec : records) {
    const Key key{rec.scheme, rec.users, rec.bandwidth_hz, rec.frame_s};
    auto [it, inserted] = index.emplace(key, rows.size());
    if (inserted) {
      SummaryRow row;
      row.scheme = rec.scheme;
      row.users = rec.users;
      row.bandwidth_hz = rec.bandwidth_hz;
      row.frame_s = rec.frame_s;
      rows.push_back(std::move(row));
      energies.emplace_back();
      time_sum.push_back(0.0);
    }
    const std::size_t i = it->second;
    if (rec.failed()) {
      ++rows[i].excluded;
      continue;
    }
    energies[i].push_back(rec.energy.total_j);
    time_sum[i] += rec.solve_ms;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& e = energies[i];
    rows[i].count = static_cast<int>(e.size());
    if (e.empty()) continue;
    double mean = 0.0;
    for (double v : e) mean += v;
    mean /= e.size();
    double var = 0.0;
    for (double v : e) var += (v - mean) * (v - mean);
    const double sd = e.size() > 1 ? std::sqrt(var / (e.size() - 1)) : 0.0;
    rows[i].mean_j = mean;
    rows[i].stderr_j = sd / std::sqrt(static_cast<double>(e.size()));
    rows[i].mean_solve_ms = time_sum[i] / e.size();
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << fmt::format("{},{},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.3f},{}\n",
                       r.seed, r.users, r.bandwidth_hz, r.frame_s, r.scheme, r.energy.total_j,
                       r.energy.transmission_j, r.energy.server_synthesis_j,
                       r.energy.user_synthesis_j, r.views_transmitted, r.solve_ms,
                       join_flags(r.flags));
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "scheme,K,B_hz,T_s,mean_E_total_J,stderr_E_total_J,mean_solve_ms,count,excluded\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{:.17g},{:.17g},{},{},{:.3f},{},{}\n", r.scheme, r.users,
                       r.bandwidth_hz, r.frame_s,
                       r.mean_j ? fmt::format("{:.17g}", *r.mean_j) : std::string("nan"),
                       r.stderr_j ? fmt::format("{:.17g}", *r.stderr_j) : std::string("nan"),
                       r.mean_solve_ms, r.count, r.excluded);
  }
}

}  // namespace vsmc
