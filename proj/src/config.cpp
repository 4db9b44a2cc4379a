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

#include "vsmc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "vsmc/errors.hpp"

namespace vsmc {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(fmt::format("{}: expected a number", field));
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(fmt::format("{}: expected an integer", field));
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(fmt::format("{}: expected an array of numbers", field));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], fmt::format("{}[{}]", field, i)));
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError(fmt::format("{}{}: unknown key", where, key));
    }
  }
}

std::vector<double> default_values(SweepParameter p) {
  switch (p) {
    case SweepParameter::kUsers: return {2, 3, 4};
    case SweepParameter::kBandwidth: return {5e6, 10e6, 15e6, 20e6};
    case SweepParameter::kFrame: return {0.05, 0.10, 0.15, 0.20};
  }
  return {};
}

DcOptions parse_dc(const json& j) {
  reject_unknown(j, {"rho", "tol", "max_iter", "max_rho_doublings", "keep_incumbent"}, "dc.");
  DcOptions dc;
  if (j.contains("rho")) {
    dc.rho = number(j["rho"], "dc.rho");
    if (!(*dc.rho > 0.0)) throw ConfigError("dc.rho: must be > 0");
  }
  if (j.contains("tol")) {
    dc.tolerance = number(j["tol"], "dc.tol");
    if (!(dc.tolerance > 0.0)) throw ConfigError("dc.tol: must be > 0");
  }
  if (j.contains("max_iter")) {
    dc.max_iterations = integer(j["max_iter"], "dc.max_iter");
    if (dc.max_iterations < 1) throw ConfigError("dc.max_iter: must be >= 1");
  }
  if (j.contains("max_rho_doublings")) {
    dc.max_rho_doublings = integer(j["max_rho_doublings"], "dc.max_rho_doublings");
    if (dc.max_rho_doublings < 0) throw ConfigError("dc.max_rho_doublings: must be >= 0");
  }
  if (j.contains("keep_incumbent")) {
    if (!j["keep_incumbent"].is_boolean()) throw ConfigError("dc.keep_incumbent: expected a boolean");
    dc.keep_incumbent = j["keep_incumbent"].get<bool>();
  }
  return dc;
}

SweepSpec parse_sweep(const json& j) {
  reject_unknown(j, {"parameter", "values", "trials", "schemes", "base_seed", "threads"}, "sweep.");
  SweepSpec spec;
  if (j.contains("parameter")) {
    if (!j["parameter"].is_string()) throw ConfigError("sweep.parameter: expected one of K, B, T");
    spec.parameter = parse_sweep_parameter(j["parameter"].get<std::string>());
  }
  spec.values = j.contains("values") ? numbers(j["values"], "sweep.values") : default_values(spec.parameter);
  if (spec.values.empty()) throw ConfigError("sweep.values: must not be empty");
  if (j.contains("trials")) {
    spec.trials = integer(j["trials"], "sweep.trials");
    if (spec.trials < 1) throw ConfigError("sweep.trials: must be >= 1");
  }
  if (j.contains("schemes")) {
    if (!j["schemes"].is_array() || j["schemes"].empty()) {
      throw ConfigError("sweep.schemes: expected a non-empty array of scheme names");
    }
    for (const auto& s : j["schemes"]) {
      if (!s.is_string()) throw ConfigError("sweep.schemes: expected scheme names");
      spec.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
  } else {
    spec.schemes = {Scheme::kRelax, Scheme::kDc, Scheme::kBaseline1, Scheme::kBaseline2};
  }
  if (j.contains("base_seed")) {
    if (!j["base_seed"].is_number_unsigned()) throw ConfigError("sweep.base_seed: expected a non-negative integer");
    spec.base_seed = j["base_seed"].get<std::uint64_t>();
  }
  if (j.contains("threads")) {
    spec.threads = integer(j["threads"], "sweep.threads");
    if (spec.threads < 0) throw ConfigError("sweep.threads: must be >= 0");
  }
  return spec;
}

json to_json(const EnergyBreakdown& e) {
  return {{"E_total_J", e.total_j},
          {"E_tx_J", e.transmission_j},
          {"E_synth_server_J", e.server_synthesis_j},
          {"E_synth_users_J", e.user_synthesis_j}};
}

}  // namespace

Scenario RunConfig::scenario() const {
  if (!requests) {
    Scenario s = generate_scenario(seed, params);
    if (user_synthesis_j) {
      if (static_cast<int>(user_synthesis_j->size()) != s.users()) {
        throw ConfigError(fmt::format("E_u_J: list has {} entries for K = {}", user_synthesis_j->size(), s.users()));
      }
      s.user_synthesis_j = *user_synthesis_j;
    }
    return s;
  }
  params.validate();
  Scenario s;
  s.grid = ViewGrid(params.views, params.subdivision, params.delta);
  for (double r : *requests) s.requests.push_back(s.grid.parse(r));
  s.channels = *channels;
  s.rate_bps = params.rate_bps;
  s.frame_s = params.frame_s;
  s.bandwidth_hz = params.bandwidth_hz;
  s.noise_w = params.noise_w.value_or(thermal_noise(params.bandwidth_hz));
  s.server_synthesis_j = params.server_synthesis_j;
  s.beta = params.beta;
  s.user_synthesis_j = user_synthesis_j.value_or(std::vector<double>(s.users(), params.user_synthesis_j));
  s.validate();
  return s;
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j,
                 {"K", "V", "Q", "delta", "R_bps", "T_s", "B_hz", "n0_W", "beta", "E_b_J", "E_u_J",
                  "channel_mean", "seed", "requests", "channels", "sweep", "dc"},
                 "");
  RunConfig c;
  GeneratorParams& p = c.params;
  if (j.contains("K")) p.users = integer(j["K"], "K");
  if (j.contains("V")) p.views = integer(j["V"], "V");
  if (j.contains("Q")) p.subdivision = integer(j["Q"], "Q");
  if (j.contains("delta")) p.delta = number(j["delta"], "delta");
  if (j.contains("R_bps")) p.rate_bps = number(j["R_bps"], "R_bps");
  if (j.contains("T_s")) p.frame_s = number(j["T_s"], "T_s");
  if (j.contains("B_hz")) p.bandwidth_hz = number(j["B_hz"], "B_hz");
  if (j.contains("n0_W")) p.noise_w = number(j["n0_W"], "n0_W");
  if (j.contains("beta")) p.beta = number(j["beta"], "beta");
  if (j.contains("E_b_J")) p.server_synthesis_j = number(j["E_b_J"], "E_b_J");
  if (j.contains("E_u_J")) {
    if (j["E_u_J"].is_array()) {
      c.user_synthesis_j = numbers(j["E_u_J"], "E_u_J");
      for (double v : *c.user_synthesis_j) {
        if (!(v >= 0.0)) throw ConfigError("E_u_J: entries must be >= 0");
      }
    } else {
      p.user_synthesis_j = number(j["E_u_J"], "E_u_J");
    }
  }
  if (j.contains("channel_mean")) p.channel_mean = number(j["channel_mean"], "channel_mean");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("requests") != j.contains("channels")) {
    throw ConfigError("requests, channels: give both or neither");
  }
  if (j.contains("requests")) {
    c.requests = numbers(j["requests"], "requests");
    c.channels = numbers(j["channels"], "channels");
    if (c.requests->size() != c.channels->size()) {
      throw ConfigError("channels: must have one entry per request");
    }
    if (j.contains("K") && static_cast<std::size_t>(p.users) != c.requests->size()) {
      throw ConfigError(fmt::format("K: {} does not match {} requests", p.users, c.requests->size()));
    }
    p.users = static_cast<int>(c.requests->size());
  }
  if (c.user_synthesis_j && static_cast<int>(c.user_synthesis_j->size()) != p.users) {
    throw ConfigError(fmt::format("E_u_J: list has {} entries for K = {}", c.user_synthesis_j->size(), p.users));
  }
  p.validate();
  if (j.contains("dc")) {
    if (!j["dc"].is_object()) throw ConfigError("dc: expected an object");
    c.dc = parse_dc(j["dc"]);
  }
  if (j.contains("sweep")) {
    if (!j["sweep"].is_object()) throw ConfigError("sweep: expected an object");
    SweepSpec spec = parse_sweep(j["sweep"]);
    spec.base = p;
    spec.dc = c.dc;
    if (!j["sweep"].contains("base_seed")) spec.base_seed = c.seed;
    c.sweep = std::move(spec);
  }
  if (c.requests) (void)c.scenario();  // surfaces off-grid requests and bad channels
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["K"] = s.users();
  j["V"] = s.grid.original_views();
  j["Q"] = s.grid.subdivision();
  j["delta"] = s.grid.reach();
  j["R_bps"] = s.rate_bps;
  j["T_s"] = s.frame_s;
  j["B_hz"] = s.bandwidth_hz;
  j["n0_W"] = s.noise_w;
  j["beta"] = s.beta;
  j["E_b_J"] = s.server_synthesis_j;
  j["E_u_J"] = s.user_synthesis_j;
  json requests = json::array();
  for (View v : s.requests) requests.push_back(s.grid.value(v));
  j["requests"] = requests;
  j["channels"] = s.channels;
  return j.dump(2);
}

std::string solution_to_json(const Scenario& s, const Solution& sol) {
  const ViewGrid& grid = s.grid;
  json views = json::array();
  for (int slot = 0; slot < grid.size(); ++slot) {
    if (!sol.selection.x[slot]) continue;
    json users = json::array();
    for (int k = 0; k < s.users(); ++k) {
      if (sol.selection.y(k, slot)) users.push_back(k);
    }
    views.push_back({{"view", grid.value(grid.at(slot))},
                     {"synthesized_at_server", !grid.is_original(grid.at(slot))},
                     {"time_s", sol.allocation.time_s[slot]},
                     {"power_W", sol.allocation.power_w[slot]},
                     {"users", users}});
  }
  json users = json::array();
  for (int k = 0; k < s.users(); ++k) {
    json used = json::array();
    for (int slot = 0; slot < grid.size(); ++slot) {
      if (sol.selection.y(k, slot)) used.push_back(grid.value(grid.at(slot)));
    }
    users.push_back({{"user", k},
                     {"request", grid.value(s.requests[k])},
                     {"channel", s.channels[k]},
                     {"utilizes", used}});
  }
  const Diagnostics& d = sol.diagnostics;
  json diag = {{"solver", d.solver},
               {"candidates", d.candidates},
               {"iterations", d.iterations},
               {"wall_ms", d.wall_ms},
               {"flags", d.flags}};
  if (d.lower_bound_j) diag["lower_bound_J"] = *d.lower_bound_j;
  json out = {{"energy", to_json(sol.energy)},
              {"views", views},
              {"users", users},
              {"diagnostics", diag}};
  return out.dump(2);
}

}  // namespace vsmc
