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

#include "vsmc/convex_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "vsmc/allocator.hpp"
#include "vsmc/errors.hpp"

namespace vsmc {

namespace {

constexpr double kMaxExponent = 700.0;

// Scaled perspective g(tau, y) = a tau (exp(L y / tau) - 1) and derivatives.
struct Perspective {
  double g = 0.0;
  double d_tau = 0.0;
  double d_y = 0.0;
  double d_tau_tau = 0.0;
  double d_tau_y = 0.0;
  double d_y_y = 0.0;
  bool finite = true;
};

Perspective perspective(double a, double rate, double tau, double y) {
  Perspective p;
  const double u = rate * y / tau;
  if (u > kMaxExponent) {
    p.finite = false;
    return p;
  }
  const double ex = std::exp(u);
  p.g = a * tau * std::expm1(u);
  // (1 - u) e^u - 1 without cancellation near zero.
  const double tilt = std::abs(u) < 1e-3
                          ? -u * u * (0.5 + u * (1.0 / 3.0 + u * (1.0 / 8.0 + u / 30.0)))
                          : std::expm1(u) - u * ex;
  p.d_tau = a * tilt;
  p.d_y = a * rate * ex;
  p.d_tau_tau = a * ex * u * u / tau;
  p.d_tau_y = -a * ex * u * rate / tau;
  p.d_y_y = a * ex * rate * rate / tau;
  return p;
}

struct ScaledScenario {
  std::vector<double> a;  // n0 T / (h_k E_scale)
  double rate = 0.0;      // (R/B) ln 2
};

ScaledScenario scaled(const Scenario& s, double energy_scale) {
  ScaledScenario out;
  out.rate = s.rate_bps / s.bandwidth_hz * std::numbers::ln2;
  for (double h : s.channels) out.a.push_back(s.noise_w * s.frame_s / (h * energy_scale));
  return out;
}

bool both_windows(const Scenario& s, int k) {
  const ViewWindows w = reference_windows(s.grid, s.requests[k]);
  return !w.left.empty() && !w.right.empty();
}

double direct_service_energy(const Scenario& s) {
  Selection sel = Selection::empty(s);
  for (int k = 0; k < s.users(); ++k) sel.y(k, s.grid.slot(s.requests[k])) = 1;
  derive_transmissions(sel);
  const AllocationResult alloc = optimal_allocation(s, sel);
  return energy(s, sel, alloc.allocation).total_j;
}

// Barrier value, gradient and (optionally) Hessian pieces at x. The value
// holds only the log terms: the linear part t*c'x is kept apart because its
// terms can cancel to far below their own magnitude.
struct Assembly {
  bool feasible = true;
  double value = 0.0;
  Eigen::VectorXd gradient;
  std::vector<Eigen::MatrixXd> blocks;  // block-diagonal Hessian
  double frame_curvature = 0.0;         // coefficient of the rank-one t term
};

void assemble(const ConvexViewProgram& prog, const ScaledScenario& sc, const Eigen::VectorXd& x,
              double t, double time_floor, bool hessian, Assembly& out) {
  const auto& blocks = prog.blocks();
  out.feasible = true;
  out.value = 0.0;
  out.gradient = t * prog.objective_gradient();
  if (hessian) out.blocks.resize(blocks.size());

  double time_sum = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    const int o = blk.offset;
    const double tau = x[o];
    const double e = x[o + 1];
    time_sum += tau;
    Eigen::MatrixXd* H = nullptr;
    if (hessian) {
      out.blocks[b].setZero(blk.size, blk.size);
      H = &out.blocks[b];
    }
    const double s_floor = tau - time_floor;
    if (!(s_floor > 0.0)) {
      out.feasible = false;
      return;
    }
    out.value -= std::log(s_floor);
    out.gradient[o] -= 1.0 / s_floor;
    if (H) (*H)(0, 0) += 1.0 / (s_floor * s_floor);

    for (const auto& entry : blk.entries) {
      const bool free = entry.local >= 0;
      const double y = free ? x[o + entry.local] : 1.0;
      const Perspective p = perspective(sc.a[entry.user], sc.rate, tau, y);
      if (!p.finite) {
        out.feasible = false;
        return;
      }
      const double s = e - p.g;
      if (!(s > 0.0)) {
        out.feasible = false;
        return;
      }
      out.value -= std::log(s);
      // d s = (-g_tau, 1, -g_y)
      out.gradient[o] += p.d_tau / s;
      out.gradient[o + 1] -= 1.0 / s;
      if (free) out.gradient[o + entry.local] += p.d_y / s;
      if (H) {
        const double inv = 1.0 / s;
        const double inv2 = inv * inv;
        (*H)(0, 0) += p.d_tau * p.d_tau * inv2 + p.d_tau_tau * inv;
        (*H)(0, 1) -= p.d_tau * inv2;
        (*H)(1, 1) += inv2;
        if (free) {
          const int j = entry.local;
          (*H)(0, j) += p.d_tau * p.d_y * inv2 + p.d_tau_y * inv;
          (*H)(1, j) -= p.d_y * inv2;
          (*H)(j, j) += p.d_y * p.d_y * inv2 + p.d_y_y * inv;
        }
      }
      if (blk.has_z) {
        const double sz = x[o + 2] - y;
        if (!(sz > 0.0)) {
          out.feasible = false;
          return;
        }
        out.value -= std::log(sz);
        out.gradient[o + 2] -= 1.0 / sz;
        if (free) out.gradient[o + entry.local] += 1.0 / sz;
        if (H) {
          const double inv2 = 1.0 / (sz * sz);
          (*H)(2, 2) += inv2;
          if (free) {
            (*H)(2, entry.local) -= inv2;
            (*H)(entry.local, entry.local) += inv2;
          }
        }
      }
      if (free) {
        const int j = o + entry.local;
        const double lo = x[j];
        const double hi = 1.0 - x[j];
        if (!(lo > 0.0) || !(hi > 0.0)) {
          out.feasible = false;
          return;
        }
        out.value -= std::log(lo) + std::log(hi);
        out.gradient[j] += -1.0 / lo + 1.0 / hi;
        if (H) (*H)(entry.local, entry.local) += 1.0 / (lo * lo) + 1.0 / (hi * hi);
      }
    }
    if (H) {
      for (int r = 0; r < blk.size; ++r) {
        for (int c = r + 1; c < blk.size; ++c) (*H)(c, r) = (*H)(r, c);
      }
    }
  }
  const double s_frame = 1.0 - time_sum;
  if (!(s_frame > 0.0)) {
    out.feasible = false;
    return;
  }
  out.value -= std::log(s_frame);
  for (const auto& blk : blocks) out.gradient[blk.offset] += 1.0 / s_frame;
  out.frame_curvature = 1.0 / (s_frame * s_frame);
}

// Solves (blockdiag(H_b) + alpha u u^T) x = rhs where u selects the t
// entries, through per-block factorizations and Sherman-Morrison.
class HessianSolver {
 public:
  HessianSolver(const ConvexViewProgram& prog, const Assembly& as) : prog_(prog) {
    const auto& blocks = prog.blocks();
    factors_.reserve(blocks.size());
    scales_.reserve(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Eigen::MatrixXd& H = as.blocks[b];
      Eigen::VectorXd d = H.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
      Eigen::MatrixXd scaled = d.asDiagonal() * H * d.asDiagonal();
      factors_.emplace_back(scaled);
      scales_.push_back(std::move(d));
    }
    Eigen::VectorXd u = Eigen::VectorXd::Zero(prog.variable_count());
    for (const auto& blk : blocks) u[blk.offset] = 1.0;
    hu_ = solve_blocks(u);
    alpha_ = as.frame_curvature;
    denom_ = 1.0 + alpha_ * hu_.dot(u);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd z = solve_blocks(rhs);
    double utz = 0.0;
    for (const auto& blk : prog_.blocks()) utz += z[blk.offset];
    z -= hu_ * (alpha_ * utz / denom_);
    return z;
  }

 private:
  Eigen::VectorXd solve_blocks(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd out(rhs.size());
    const auto& blocks = prog_.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& blk = blocks[b];
      const Eigen::VectorXd& d = scales_[b];
      Eigen::VectorXd local = d.cwiseProduct(rhs.segment(blk.offset, blk.size));
      out.segment(blk.offset, blk.size) = d.cwiseProduct(factors_[b].solve(local));
    }
    return out;
  }

  const ConvexViewProgram& prog_;
  std::vector<Eigen::LDLT<Eigen::MatrixXd>> factors_;
  std::vector<Eigen::VectorXd> scales_;
  Eigen::VectorXd hu_;
  double alpha_ = 0.0;
  double denom_ = 1.0;
};

// Equality-constrained Newton direction: H dx + A^T w = -g, A dx = 0.
Eigen::VectorXd newton_direction(const ConvexViewProgram& prog, const HessianSolver& solver,
                                 const Eigen::VectorXd& g) {
  const auto& rows = prog.equalities();
  Eigen::VectorXd hg = solver.solve(g);
  if (rows.empty()) return -hg;
  const int m = static_cast<int>(rows.size());
  const int n = prog.variable_count();
  Eigen::MatrixXd hat(n, m);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (int j : rows[i]) a[j] = 1.0;
    hat.col(i) = solver.solve(a);
  }
  Eigen::MatrixXd S(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    for (int j : rows[i]) r += hg[j];
    rhs[i] = -r;
    for (int c = 0; c < m; ++c) {
      double v = 0.0;
      for (int j : rows[i]) v += hat(j, c);
      S(i, c) = v;
    }
  }
  const Eigen::VectorXd w = S.ldlt().solve(rhs);
  return -(hg + hat * w);
}

// Equality residual max |A x - 1|.
double equality_residual(const ConvexViewProgram& prog, const Eigen::VectorXd& x) {
  double worst = 0.0;
  for (const auto& row : prog.equalities()) {
    double s = 0.0;
    for (int j : row) s += x[j];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

// Component of r orthogonal to the row space of A (A rows are 0/1).
Eigen::VectorXd project_out_equalities(const ConvexViewProgram& prog, const Eigen::VectorXd& r) {
  const auto& rows = prog.equalities();
  if (rows.empty()) return r;
  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXd AAt = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd Ar(m);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j : rows[i]) s += r[j];
    Ar[i] = s;
    for (int c = 0; c < m; ++c) {
      int shared = 0;
      for (int j : rows[i]) shared += static_cast<int>(std::count(rows[c].begin(), rows[c].end(), j));
      AAt(i, c) = shared;
    }
  }
  const Eigen::VectorXd nu = AAt.ldlt().solve(Ar);
  Eigen::VectorXd out = r;
  for (int i = 0; i < m; ++i) {
    for (int j : rows[i]) out[j] -= nu[i];
  }
  return out;
}

}  // namespace

int ConvexViewProgram::z_count() const {
  return static_cast<int>(std::count_if(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.has_z; }));
}

int ConvexViewProgram::active_y_count() const {
  int n = 0;
  for (const auto& b : blocks_) n += static_cast<int>(b.entries.size());
  return n;
}

std::vector<std::pair<int, int>> ConvexViewProgram::free_y() const { return y_owner_; }

int ConvexViewProgram::y_variable(int k, int slot) const { return y_lookup_(k, slot); }

ConvexViewProgram build_program(const Scenario& scenario, const UserViewMatrix<double>* linear_y,
                                double constant_j) {
  const ViewGrid& grid = scenario.grid;
  const int n = grid.size();
  const int users = scenario.users();
  ConvexViewProgram prog;
  prog.scenario_ = &scenario;
  prog.energy_scale_ = direct_service_energy(scenario);

  // entries[slot] = (user, free?)
  std::vector<std::vector<std::pair<int, bool>>> touching(n);
  std::vector<bool> free_user(users);
  for (int k = 0; k < users; ++k) {
    const View r = scenario.requests[k];
    free_user[k] = both_windows(scenario, k);
    touching[grid.slot(r)].push_back({k, free_user[k]});
    if (!free_user[k]) continue;
    const ViewWindows w = reference_windows(grid, r);
    for (View v : w.left) touching[grid.slot(v)].push_back({k, true});
    for (View v : w.right) touching[grid.slot(v)].push_back({k, true});
  }

  prog.y_lookup_ = UserViewMatrix<int>(users, n, -1);
  const bool with_z = scenario.server_synthesis_j > 0.0;
  int offset = 0;
  for (int s = 0; s < n; ++s) {
    if (touching[s].empty()) continue;
    auto& list = touching[s];
    std::sort(list.begin(), list.end());
    ConvexViewProgram::Block blk;
    blk.view = grid.at(s);
    blk.slot = s;
    blk.has_z = with_z && !grid.is_original(blk.view);
    blk.offset = offset;
    int local = blk.has_z ? 3 : 2;
    for (const auto& [k, is_free] : list) {
      ConvexViewProgram::Entry entry{k, is_free ? local++ : -1};
      if (is_free) {
        prog.y_lookup_(k, s) = offset + entry.local;
        prog.y_index_.push_back(offset + entry.local);
        prog.y_owner_.push_back({k, s});
      }
      blk.entries.push_back(entry);
    }
    blk.size = local;
    offset += local;
    prog.blocks_.push_back(std::move(blk));
  }
  prog.variables_ = offset;

  const double scale = prog.energy_scale_;
  prog.cost_ = Eigen::VectorXd::Zero(offset);
  prog.constant_ = constant_j / scale;
  int inequalities = 1;
  for (const auto& blk : prog.blocks_) {
    prog.cost_[blk.offset + 1] = 1.0;
    if (blk.has_z) prog.cost_[blk.offset + 2] = scenario.server_synthesis_j / scale;
    inequalities += 1 + static_cast<int>(blk.entries.size()) * (blk.has_z ? 2 : 1);
  }
  for (std::size_t i = 0; i < prog.y_index_.size(); ++i) {
    const auto [k, s] = prog.y_owner_[i];
    const View r = scenario.requests[k];
    double c = 0.0;
    if (grid.at(s) > r) c += scenario.beta * scenario.user_synthesis_j[k];
    if (linear_y) c += (*linear_y)(k, s);
    prog.cost_[prog.y_index_[i]] = c / scale;
    inequalities += 2;
  }
  prog.inequalities_ = inequalities;

  for (int k = 0; k < users; ++k) {
    if (!free_user[k]) continue;
    const View r = scenario.requests[k];
    const ViewWindows w = reference_windows(grid, r);
    std::vector<int> right{prog.y_lookup_(k, grid.slot(r))};
    std::vector<int> left = right;
    for (View v : w.right) right.push_back(prog.y_lookup_(k, grid.slot(v)));
    for (View v : w.left) left.push_back(prog.y_lookup_(k, grid.slot(v)));
    prog.equalities_.push_back(std::move(right));
    prog.equalities_.push_back(std::move(left));
  }
  return prog;
}

Eigen::VectorXd ConvexViewProgram::interior_start(double time_floor) const {
  const Scenario& s = *scenario_;
  const ViewGrid& grid = s.grid;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(variables_);

  constexpr double kSpread = 0.01;
  for (int k = 0; k < s.users(); ++k) {
    const View r = s.requests[k];
    const int direct = y_lookup_(k, grid.slot(r));
    if (direct < 0) continue;
    const ViewWindows w = reference_windows(grid, r);
    x[direct] = 1.0 - kSpread;
    for (View v : w.left) x[y_lookup_(k, grid.slot(v))] = kSpread / w.left.size();
    for (View v : w.right) x[y_lookup_(k, grid.slot(v))] = kSpread / w.right.size();
  }

  // Requested views get 90% of the frame split as for direct service; the
  // rest is spread over the remaining views.
  std::vector<double> worst(grid.size(), std::numeric_limits<double>::infinity());
  for (int k = 0; k < s.users(); ++k) {
    double& w = worst[grid.slot(s.requests[k])];
    w = std::min(w, s.channels[k]);
  }
  std::vector<int> requested;
  std::vector<double> hs;
  for (int slot = 0; slot < grid.size(); ++slot) {
    if (std::isfinite(worst[slot])) {
      requested.push_back(slot);
      hs.push_back(worst[slot]);
    }
  }
  const FrameShare share = share_frame(s, hs);
  const int others = static_cast<int>(blocks_.size() - requested.size());
  const double request_fraction = others > 0 ? 0.9 : 0.95;
  for (const auto& blk : blocks_) {
    const auto it = std::find(requested.begin(), requested.end(), blk.slot);
    double tau;
    if (it != requested.end()) {
      tau = request_fraction * share.time_s[it - requested.begin()] / s.frame_s;
    } else {
      tau = 0.09 / others;
    }
    x[blk.offset] = std::max(tau, 10.0 * time_floor);
  }

  const ScaledScenario sc = scaled(s, energy_scale_);
  for (const auto& blk : blocks_) {
    double g_max = 0.0;
    double y_max = 0.0;
    for (const auto& entry : blk.entries) {
      const double y = entry.local >= 0 ? x[blk.offset + entry.local] : 1.0;
      y_max = std::max(y_max, y);
      g_max = std::max(g_max, perspective(sc.a[entry.user], sc.rate, x[blk.offset], y).g);
    }
    x[blk.offset + 1] = g_max + std::max(g_max, 1e-3);
    if (blk.has_z) x[blk.offset + 2] = y_max + 0.5;
  }
  return x;
}

std::vector<double> ConvexViewProgram::times(const Eigen::VectorXd& x) const {
  std::vector<double> t(scenario_->grid.size(), 0.0);
  for (const auto& blk : blocks_) t[blk.slot] = x[blk.offset] * scenario_->frame_s;
  return t;
}

UserViewMatrix<double> ConvexViewProgram::utilizations(const Eigen::VectorXd& x) const {
  const Scenario& s = *scenario_;
  UserViewMatrix<double> y(s.users(), s.grid.size(), 0.0);
  for (const auto& blk : blocks_) {
    for (const auto& entry : blk.entries) {
      y(entry.user, blk.slot) = entry.local >= 0 ? x[blk.offset + entry.local] : 1.0;
    }
  }
  return y;
}

BarrierEvaluation evaluate_barrier(const ConvexViewProgram& program, const Eigen::VectorXd& x,
                                   double t, double time_floor) {
  const ScaledScenario sc = scaled(program.scenario(), program.energy_scale());
  Assembly as;
  assemble(program, sc, x, t, time_floor, false, as);
  BarrierEvaluation out;
  out.feasible = as.feasible;
  if (as.feasible) {
    out.value = t * program.objective(x) + as.value;
    out.gradient = std::move(as.gradient);
  }
  return out;
}

ConvexSolution solve_program(const ConvexViewProgram& program, const ConvexOptions& options) {
  const Scenario& scenario = program.scenario();
  const ScaledScenario sc = scaled(scenario, program.energy_scale());
  const double floor = options.time_floor;
  const double m = program.inequality_count();

  Eigen::VectorXd x = program.interior_start(floor);
  double t = 1.0 / options.initial_mu;
  int steps = 0;
  int stages = 0;
  Assembly as;
  Assembly trial;
  bool precision_limited = false;
  for (;;) {
    ++stages;
    // Centering. Large penalty coefficients can demand slacks below what a
    // double resolves next to 1; Newton then crawls by a few ulps per step.
    // Such a stage is cut short, and if it was still far from centered the
    // method stops at the precision limit.
    int stage_steps = 0;
    bool stalled = false;
    for (;;) {
      assemble(program, sc, x, t, floor, true, as);
      if (!as.feasible) throw ConvergenceError("barrier iterate left the interior", steps, t);
      const HessianSolver solver(program, as);
      const Eigen::VectorXd dx = newton_direction(program, solver, as.gradient);
      const double slope = as.gradient.dot(dx);
      const double decrement = -0.5 * slope;
      const double noise =
          64.0 * std::numeric_limits<double>::epsilon() *
          (t * program.objective_gradient().cwiseAbs().dot(dx.cwiseAbs()) +
           (as.gradient - t * program.objective_gradient()).cwiseAbs().dot(dx.cwiseAbs()));
      if (!(decrement > std::max(options.newton_tolerance, noise))) break;
      if (++stage_steps > options.max_centering_steps) {
        stalled = decrement > 1e-3;
        break;
      }
      if (++steps > options.max_newton_steps) {
        throw ConvergenceError(
            fmt::format("interior point exceeded {} Newton steps", options.max_newton_steps),
            decrement, m / t);
      }
      // The linear part is compared as t*c'dx rather than through values of
      // t*c'x, whose terms can be many orders larger than their sum.
      const double linear_slope = t * program.objective_gradient().dot(dx);
      double step = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 80; ++ls) {
        assemble(program, sc, x + step * dx, t, floor, false, trial);
        if (trial.feasible &&
            step * linear_slope + (trial.value - as.value) <= 0.25 * step * slope) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        stalled = decrement > 1e-3;
        break;
      }
      x += step * dx;
      // In the quadratic region a damped step or a realized decrease far
      // from the predicted one means rounding has taken over.
      const double gain = -(step * linear_slope + (trial.value - as.value));
      if (decrement < 1e-6 && (step < 1.0 || gain < 0.5 * decrement)) break;
    }
    if (stalled) {
      precision_limited = true;
      break;
    }
    const double objective = program.objective(x);
    if (m / t < options.gap_tolerance * (1.0 + std::abs(objective))) break;
    t *= 10.0;
  }

  // Final centering driven by the gradient rather than barrier values: once
  // t is large, value differences drown in rounding long before the
  // gradient stops improving.
  const auto stationarity = [&](const Assembly& a) {
    return project_out_equalities(program, a.gradient / t).cwiseAbs().maxCoeff();
  };
  if (!precision_limited) {
    assemble(program, sc, x, t, floor, true, as);
    double residual = stationarity(as);
    for (int polish = 0; polish < options.max_centering_steps; ++polish) {
      const HessianSolver solver(program, as);
      const Eigen::VectorXd dx = newton_direction(program, solver, as.gradient);
      double step = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 60; ++ls) {
        assemble(program, sc, x + step * dx, t, floor, true, trial);
        if (trial.feasible) {
          const double r = stationarity(trial);
          if (r < residual) {
            residual = r;
            improved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!improved) break;
      x += step * dx;
      std::swap(as, trial);
      ++steps;
    }
  }

  ConvexSolution out;
  const double scale = program.energy_scale();
  out.newton_steps = steps;
  out.precision_limited = precision_limited;
  out.barrier_stages = stages;

  // KKT residuals at the final centered point: multipliers mu / slack.
  assemble(program, sc, x, t, floor, false, as);
  const Eigen::VectorXd lagrangian = project_out_equalities(program, as.gradient / t);
  const double grad_scale = 1.0 + program.objective_gradient().cwiseAbs().maxCoeff();
  out.residuals.stationarity = lagrangian.cwiseAbs().maxCoeff() / grad_scale;
  out.residuals.primal = equality_residual(program, x);
  out.residuals.complementarity = m / t / (1.0 + std::abs(program.objective(x)));

  // Views left with negligible utilization are dropped, and the epigraph
  // variables are pulled onto their bounds: the barrier keeps each e_v about
  // 1/t above max_k g, which is not small next to a tiny transmission energy.
  out.epigraph_j.assign(scenario.grid.size(), 0.0);
  out.z.assign(scenario.grid.size(), 0.0);
  for (const auto& blk : program.blocks()) {
    const int o = blk.offset;
    bool used = false;
    for (const auto& entry : blk.entries) {
      used = used || entry.local < 0 || x[o + entry.local] >= 1e-10;
    }
    double g_max = 0.0;
    double y_max = 0.0;
    for (const auto& entry : blk.entries) {
      if (entry.local >= 0 && !used) x[o + entry.local] = 0.0;
      const double y = entry.local >= 0 ? x[o + entry.local] : 1.0;
      if (y <= 0.0) continue;
      y_max = std::max(y_max, y);
      g_max = std::max(g_max, perspective(sc.a[entry.user], sc.rate, x[o], y).g);
    }
    if (!used) x[o] = 0.0;
    x[o + 1] = g_max;
    if (blk.has_z) x[o + 2] = y_max;
    out.epigraph_j[blk.slot] = g_max * scale;
    out.z[blk.slot] = blk.has_z ? y_max : 0.0;
  }
  out.objective_j = program.objective(x) * scale;
  out.y = program.utilizations(x);
  out.time_s = program.times(x);
  return out;
}

PerspectiveTerms perspective_terms(const Scenario& scenario, std::span<const double> t,
                                   const UserViewMatrix<double>& y) {
  const ViewGrid& grid = scenario.grid;
  const double bits = scenario.rate_bps * scenario.frame_s / scenario.bandwidth_hz;
  PerspectiveTerms out;
  for (int s = 0; s < grid.size(); ++s) {
    double worst = 0.0;
    double y_max = 0.0;
    for (int k = 0; k < scenario.users(); ++k) {
      const double yk = y(k, s);
      y_max = std::max(y_max, yk);
      if (yk <= 0.0) continue;
      double term;
      if (t[s] <= 0.0) {
        term = std::numeric_limits<double>::infinity();
      } else {
        term = t[s] * scenario.noise_w / scenario.channels[k] *
               std::expm1(yk * bits * std::numbers::ln2 / t[s]);
      }
      worst = std::max(worst, term);
    }
    out.transmission_j += worst;
    if (!grid.is_original(grid.at(s))) out.server_synthesis_j += scenario.server_synthesis_j * y_max;
  }
  for (int k = 0; k < scenario.users(); ++k) {
    const ViewWindows w = reference_windows(grid, scenario.requests[k]);
    double sum = 0.0;
    for (View v : w.right) sum += y(k, grid.slot(v));
    out.user_synthesis_j += scenario.beta * scenario.user_synthesis_j[k] * sum;
  }
  out.total_j = out.transmission_j + out.server_synthesis_j + out.user_synthesis_j;
  return out;
}

double perspective_objective(const Scenario& scenario, std::span<const double> t,
                             const UserViewMatrix<double>& y) {
  return perspective_terms(scenario, t, y).total_j;
}

}  // namespace vsmc
