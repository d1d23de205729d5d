// Copyright 2026 The fluidmimo Authors.
//
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

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "fluidmimo/channel.hpp"
#include "fluidmimo/ipm.hpp"

namespace fluidmimo {

/// One epigraph variable t <= min(x_row, y_col) with objective weight |g|^2.
struct LpEdge {
  int row;
  int col;
  double weight;
};

/// Epigraph form of the joint relaxation:
///
///   maximize   sum_e weight_e t_e
///   subject to t_e <= x_row(e),  t_e <= y_col(e),  t >= 0,
///              sum of x over each receive antenna's ports = 1,
///              sum of y over each transmit antenna's ports = 1,
///              x >= 0, y >= 0.
///
/// Zero-weight pairs carry no variable. x <= 1 and y <= 1 follow from the
/// simplex constraints and are not stated.
struct LpProblem {
  ArrayDims dims;
  std::vector<LpEdge> edges;

  int num_x() const noexcept { return dims.rows(); }
  int num_y() const noexcept { return dims.cols(); }
  int num_t() const noexcept { return static_cast<int>(edges.size()); }
  int num_variables() const noexcept { return num_x() + num_y() + num_t(); }
  int num_equalities() const noexcept { return dims.m_r + dims.m_t; }
  /// Coupling inequalities t <= x and t <= y.
  int num_inequalities() const noexcept { return 2 * num_t(); }
};

LpProblem build_lp(const OverallChannel& channel);

/// Writes the problem in CPLEX LP text format for external cross-checks.
void write_lp(const LpProblem& problem, std::ostream& out);

enum class KktMethod {
  Structured,   ///< eliminates the epigraph block per pair
  DenseNormal,  ///< explicit normal equations, small problems only
};

/// Fractional port weights from the relaxation.
struct RelaxedSolution {
  Eigen::VectorXd x_hat;  ///< m_r n_r weights in [0, 1]
  Eigen::VectorXd y_hat;  ///< m_t n_t weights in [0, 1]
  double u_star = 0.0;    ///< optimal surrogate value
  Eigen::VectorXd rx_duals;  ///< multipliers of the receive simplex rows
  Eigen::VectorXd tx_duals;  ///< multipliers of the transmit simplex rows
  SolverStats stats;
};

RelaxedSolution solve_lp(const LpProblem& problem,
                         KktMethod method = KktMethod::Structured,
                         const IpmOptions& options = {});

/// Solves the joint convex relaxation of the port selection problem.
/// Throws SolverFailure if the interior-point method does not converge.
RelaxedSolution solve_jcr(const OverallChannel& channel,
                          KktMethod method = KktMethod::Structured,
                          const IpmOptions& options = {});

}  // namespace fluidmimo
