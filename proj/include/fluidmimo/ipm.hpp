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

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace fluidmimo {

/// Convergence report of the interior-point solver.
struct SolverStats {
  int iterations = 0;
  double duality_gap = 0.0;      ///< |c'z - b'y| / (1 + |c'z|)
  double primal_residual = 0.0;  ///< ||Az - b||_inf / (1 + ||b||_inf)
  double dual_residual = 0.0;    ///< ||A'y + s - c||_inf / (1 + ||c||_inf)
  double complementarity = 0.0;  ///< max_i z_i s_i
  bool converged = false;
};

/// The solver hit its iteration cap or broke down numerically.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, const SolverStats& stats)
      : std::runtime_error(what), stats_(stats) {}

  const SolverStats& stats() const noexcept { return stats_; }

 private:
  SolverStats stats_;
};

struct IpmOptions {
  int max_iterations = 200;
  double gap_tolerance = 1e-7;
  double feasibility_tolerance = 1e-8;
  /// Fraction of the distance to the boundary taken per step.
  double step_fraction = 0.995;
  /// When the search direction can no longer be computed accurately, the
  /// current iterate is still accepted if it is within this factor of the
  /// gap and feasibility tolerances.
  double stall_slack = 1e3;
};

/// A linear program min c'z s.t. Az = b, z >= 0.
///
/// The constraint matrix is only reached through products and through the
/// augmented system
///
///   [ -diag(theta)^-1  A' ] [dz]   [f]
///   [  A               0  ] [dy] = [g]
///
/// so that implementations can exploit structure.
class StandardFormLp {
 public:
  virtual ~StandardFormLp() = default;

  virtual int num_variables() const = 0;
  virtual int num_constraints() const = 0;
  virtual const Eigen::VectorXd& cost() const = 0;
  virtual const Eigen::VectorXd& rhs() const = 0;

  virtual Eigen::VectorXd multiply(const Eigen::VectorXd& z) const = 0;
  virtual Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& y) const = 0;

  /// Prepares solve() for the scaling theta > 0. Returns false if the system
  /// could not be factorized.
  virtual bool factorize(const Eigen::VectorXd& theta) = 0;
  virtual void solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                     Eigen::VectorXd& dz, Eigen::VectorXd& dy) const = 0;
};

/// Explicit constraint matrix (stored sparse); the augmented system is reduced to the
/// normal equations A diag(theta) A' and solved by LDLT.
class DenseLp final : public StandardFormLp {
 public:
  DenseLp(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c);

  int num_variables() const override { return static_cast<int>(a_.cols()); }
  int num_constraints() const override { return static_cast<int>(a_.rows()); }
  const Eigen::VectorXd& cost() const override { return c_; }
  const Eigen::VectorXd& rhs() const override { return b_; }
  Eigen::VectorXd multiply(const Eigen::VectorXd& z) const override;
  Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& y) const override;
  bool factorize(const Eigen::VectorXd& theta) override;
  void solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
             Eigen::VectorXd& dz, Eigen::VectorXd& dy) const override;

 private:
  Eigen::SparseMatrix<double> a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd c_;
  Eigen::VectorXd theta_;
  Eigen::LDLT<Eigen::MatrixXd> normal_;
};

struct IpmResult {
  Eigen::VectorXd z;  ///< primal
  Eigen::VectorXd y;  ///< equality multipliers
  Eigen::VectorXd s;  ///< reduced costs
  SolverStats stats;
};

/// Mehrotra predictor-corrector primal-dual path following.
///
/// Starts from Mehrotra's least-squares point and stops once the relative
/// duality gap and both relative residuals fall below the tolerances.
/// Throws SolverFailure otherwise.
IpmResult solve_standard_form(StandardFormLp& lp, const IpmOptions& options = {});

}  // namespace fluidmimo
