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

// Convex program over transmission times t and fractional utilizations y:
//
//   minimize   sum_v e_v + E_b sum_{v synthesized} z_v
//              + beta sum_k E_u,k sum_{v right of r_k} y_kv + sum c_kv y_kv + const
//   subject to e_v >= (n0/h_k) t_v (2^(y_kv R T / (B t_v)) - 1)   (perspective)
//              z_v >= y_kv,  0 <= y <= 1,  t >= t_floor,  sum_v t_v <= T,
//              y_k,r_k + sum_{right} y_kv = 1,  y_k,r_k + sum_{left} y_kv = 1.
//
// With c = 0 this is the continuous relaxation of the view selection
// problem; the DC method adds the linearized binarity penalty through c.
// Solved by a primal log-barrier method with equality-constrained Newton
// steps. The barrier Hessian is block diagonal per view plus a rank-one term
// from the frame constraint, so each Newton system is solved blockwise with a
// Sherman-Morrison correction and a small Schur complement for the
// per-user equalities.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vsmc/model.hpp"

namespace vsmc {

struct ConvexOptions {
  int max_newton_steps = 500;
  int max_centering_steps = 50;  // per barrier stage, once the decrement is small
  double gap_tolerance = 1e-8;      // stop once m*mu < tol * (1 + |objective|)
  double newton_tolerance = 1e-9;   // on half the squared Newton decrement
  double time_floor = 1e-12;        // lower bound on t as a fraction of T
  double initial_mu = 1.0;
};

class ConvexViewProgram {
 public:
  // One perspective constraint of a view: user k with either a free y
  // variable (local >= 0) or a y fixed to 1 (local < 0).
  struct Entry {
    int user = 0;
    int local = -1;
  };

  // Variables of one view, laid out contiguously: t, e, [z], free y's.
  struct Block {
    View view;
    int slot = 0;
    bool has_z = false;
    int offset = 0;
    int size = 0;
    std::vector<Entry> entries;
  };

  const Scenario& scenario() const { return *scenario_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int variable_count() const { return variables_; }

  int e_count() const { return static_cast<int>(blocks_.size()); }
  int z_count() const;
  int free_y_count() const { return static_cast<int>(y_index_.size()); }
  // Free plus fixed-to-one utilizations.
  int active_y_count() const;
  // (user, slot) pairs of the free y variables, in variable order.
  std::vector<std::pair<int, int>> free_y() const;

  // Equality rows, each a list of variable indices with unit coefficients
  // and right-hand side 1.
  const std::vector<std::vector<int>>& equalities() const { return equalities_; }

  // Objective gradient in scaled units (energy / energy_scale()).
  const Eigen::VectorXd& objective_gradient() const { return cost_; }
  double objective_constant() const { return constant_; }
  // Energy unit used internally: total energy of serving everyone directly.
  double energy_scale() const { return energy_scale_; }

  // Index of the free y variable of (user, slot), or -1.
  int y_variable(int k, int slot) const;

  // Number of inequality constraints carrying a barrier term.
  int inequality_count() const { return inequalities_; }

  // Scaled objective value at x.
  double objective(const Eigen::VectorXd& x) const { return cost_.dot(x) + constant_; }

  // Strictly feasible point satisfying the equalities.
  Eigen::VectorXd interior_start(double time_floor) const;

  // Time (s) per grid slot and y per (user, slot) stored in x; fixed
  // utilizations are filled in.
  std::vector<double> times(const Eigen::VectorXd& x) const;
  UserViewMatrix<double> utilizations(const Eigen::VectorXd& x) const;

 private:
  friend ConvexViewProgram build_program(const Scenario&, const UserViewMatrix<double>*, double);

  const Scenario* scenario_ = nullptr;
  std::vector<Block> blocks_;
  std::vector<int> y_index_;        // variable index of each free y
  std::vector<std::pair<int, int>> y_owner_;
  std::vector<std::vector<int>> equalities_;
  UserViewMatrix<int> y_lookup_;
  Eigen::VectorXd cost_;
  double constant_ = 0.0;
  double energy_scale_ = 1.0;
  int variables_ = 0;
  int inequalities_ = 0;
};

// Builds the program. `linear_y` (J per unit of y, indexed by user and grid
// slot) and `constant_j` are added to the objective; both are zero for the
// plain relaxation. Entries of linear_y on fixed or inactive utilizations are
// ignored. The scenario must outlive the program.
ConvexViewProgram build_program(const Scenario& scenario,
                                const UserViewMatrix<double>* linear_y = nullptr,
                                double constant_j = 0.0);

struct BarrierEvaluation {
  bool feasible = false;
  double value = 0.0;  // t * objective + barrier
  Eigen::VectorXd gradient;
};

// Log-barrier function t*f0(x) - sum log(slack_i(x)) and its gradient.
BarrierEvaluation evaluate_barrier(const ConvexViewProgram& program, const Eigen::VectorXd& x,
                                   double t, double time_floor = 1e-12);

struct KktResiduals {
  double stationarity = 0.0;     // projected Lagrangian gradient, relative
  double primal = 0.0;           // equality / inequality violation
  double complementarity = 0.0;  // m * mu, relative to 1 + |objective|
};

struct ConvexSolution {
  std::vector<double> time_s;   // per grid slot
  UserViewMatrix<double> y;     // per (user, grid slot)
  std::vector<double> epigraph_j;  // e_v per grid slot (J), 0 outside the program
  std::vector<double> z;           // z_v per grid slot, 0 when absent
  double objective_j = 0.0;     // program objective including linear term and constant
  KktResiduals residuals;
  int newton_steps = 0;
  int barrier_stages = 0;
  // Stopped before the gap target because rounding stalled centering.
  bool precision_limited = false;
};

// Throws ConvergenceError (stationarity, gap) when the Newton budget runs out.
ConvexSolution solve_program(const ConvexViewProgram& program, const ConvexOptions& options = {});

struct PerspectiveTerms {
  double transmission_j = 0.0;       // E1
  double server_synthesis_j = 0.0;   // E2
  double user_synthesis_j = 0.0;     // E3, including the weight beta
  double total_j = 0.0;
};

// Direct evaluation of the objective (no epigraph variables) at times t (s,
// per grid slot) and utilizations y. A view with t = 0 contributes 0 when all
// its y are 0 and +infinity otherwise.
PerspectiveTerms perspective_terms(const Scenario& scenario, std::span<const double> t,
                                   const UserViewMatrix<double>& y);
double perspective_objective(const Scenario& scenario, std::span<const double> t,
                             const UserViewMatrix<double>& y);

}  // namespace vsmc
