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

#include "fluidmimo/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fluidmimo {

DenseLp::DenseLp(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c)
    : a_(a.sparseView()), b_(std::move(b)), c_(std::move(c)) {}

Eigen::VectorXd DenseLp::multiply(const Eigen::VectorXd& z) const {
  return a_ * z;
}

Eigen::VectorXd DenseLp::multiply_transpose(const Eigen::VectorXd& y) const {
  return a_.transpose() * y;
}

bool DenseLp::factorize(const Eigen::VectorXd& theta) {
  theta_ = theta;
  const Eigen::SparseMatrix<double> at = theta.asDiagonal() * a_.transpose();
  normal_.compute(Eigen::MatrixXd(a_ * at));
  return normal_.info() == Eigen::Success;
}

void DenseLp::solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                    Eigen::VectorXd& dz, Eigen::VectorXd& dy) const {
  dy = normal_.solve(g + a_ * theta_.cwiseProduct(f));
  dz = theta_.cwiseProduct(a_.transpose() * dy - f);
}

namespace {

constexpr double kDirectionAccuracy = 1e-8;

// Largest alpha in [0, cap] keeping v + alpha * dv >= 0.
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv,
                double cap = 1.0) {
  double alpha = cap;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
}

// Solves the factorized KKT system, then applies a few rounds of iterative
// refinement. Returns the remaining residual relative to the right-hand side.
double solve_refined(const StandardFormLp& lp, const Eigen::VectorXd& theta,
                     const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                     Eigen::VectorXd& dz, Eigen::VectorXd& dy) {
  lp.solve(f, g, dz, dy);
  const double scale = 1.0 + std::max(inf_norm(f), inf_norm(g));
  const auto residuals = [&](Eigen::VectorXd& r1, Eigen::VectorXd& r2) {
    r1 = f + dz.cwiseQuotient(theta) - lp.multiply_transpose(dy);
    r2 = g - lp.multiply(dz);
    return std::max(inf_norm(r1.cwiseProduct(theta.cwiseSqrt())), inf_norm(r2)) /
           scale;
  };
  Eigen::VectorXd r1, r2, ez, ey;
  double res = residuals(r1, r2);
  for (int round = 0; round < 3 && res > 1e-15; ++round) {
    lp.solve(r1, r2, ez, ey);
    dz += ez;
    dy += ey;
    const double next = residuals(r1, r2);
    if (!(next < res)) {
      dz -= ez;
      dy -= ey;
      break;
    }
    res = next;
  }
  return res;
}

}  // namespace

IpmResult solve_standard_form(StandardFormLp& lp, const IpmOptions& options) {
  const Eigen::Index n = lp.num_variables();
  const Eigen::Index m = lp.num_constraints();
  const Eigen::VectorXd& c = lp.cost();
  const Eigen::VectorXd& b = lp.rhs();
  const double b_norm = inf_norm(b);
  const double c_norm = inf_norm(c);

  IpmResult out;
  SolverStats& stats = out.stats;
  Eigen::VectorXd& z = out.z;
  Eigen::VectorXd& y = out.y;
  Eigen::VectorXd& s = out.s;

  // Mehrotra's starting point: least-norm primal, least-squares dual, then
  // shifted into the positive orthant.
  if (!lp.factorize(Eigen::VectorXd::Ones(n))) {
    throw SolverFailure("interior point: cannot factorize A A'", stats);
  }
  Eigen::VectorXd w;
  lp.solve(Eigen::VectorXd::Zero(n), b, z, y);
  lp.solve(c, Eigen::VectorXd::Zero(m), w, y);
  s = -w;
  if (n > 0) {
    z.array() += std::max(-1.5 * z.minCoeff(), 0.0);
    s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
    const double zs = z.dot(s);
    z.array() += zs > 0.0 ? 0.5 * zs / s.sum() : 1.0;
    s.array() += zs > 0.0 ? 0.5 * zs / z.sum() : 1.0;
  }

  Eigen::VectorXd dz, dy, ds, dz_aff, dy_aff, ds_aff, theta, f, rxs;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd rb = lp.multiply(z) - b;
    const Eigen::VectorXd rc = lp.multiply_transpose(y) + s - c;
    const double primal_obj = c.dot(z);
    const double dual_obj = b.dot(y);

    stats.iterations = iter;
    stats.primal_residual = inf_norm(rb) / (1.0 + b_norm);
    stats.dual_residual = inf_norm(rc) / (1.0 + c_norm);
    stats.duality_gap =
        std::abs(primal_obj - dual_obj) / (1.0 + std::abs(primal_obj));
    stats.complementarity = n > 0 ? z.cwiseProduct(s).maxCoeff() : 0.0;

    if (!std::isfinite(stats.primal_residual) ||
        !std::isfinite(stats.dual_residual) ||
        !std::isfinite(stats.duality_gap)) {
      throw SolverFailure("interior point: numerical breakdown", stats);
    }
    if (stats.primal_residual <= options.feasibility_tolerance &&
        stats.dual_residual <= options.feasibility_tolerance &&
        stats.duality_gap <= options.gap_tolerance &&
        stats.complementarity <=
            options.gap_tolerance * (1.0 + std::abs(primal_obj))) {
      stats.converged = true;
      return out;
    }
    if (iter >= options.max_iterations) {
      throw SolverFailure("interior point: iteration limit reached", stats);
    }

    // Degenerate problems can leave the KKT system too ill-conditioned for
    // another step; a point already close to the tolerances is kept then.
    const double slack = options.stall_slack;
    const auto stop_or_fail = [&](const char* what) {
      if (stats.primal_residual <= slack * options.feasibility_tolerance &&
          stats.dual_residual <= slack * options.feasibility_tolerance &&
          stats.duality_gap <= slack * options.gap_tolerance) {
        stats.converged = true;
        return;
      }
      throw SolverFailure(what, stats);
    };

    const double mu = z.dot(s) / static_cast<double>(n);
    theta = z.cwiseQuotient(s);
    if (!lp.factorize(theta)) {
      stop_or_fail("interior point: KKT factorization failed");
      return out;
    }

    // Predictor (affine scaling) direction.
    f = s - rc;
    if (solve_refined(lp, theta, f, -rb, dz_aff, dy_aff) > kDirectionAccuracy) {
      stop_or_fail("interior point: search direction lost accuracy");
      return out;
    }
    ds_aff = -s - s.cwiseProduct(dz_aff).cwiseQuotient(z);
    const double ap_aff = max_step(z, dz_aff);
    const double ad_aff = max_step(s, ds_aff);
    const double mu_aff =
        (z + ap_aff * dz_aff).dot(s + ad_aff * ds_aff) / static_cast<double>(n);
    const double sigma = std::pow(mu_aff / mu, 3);

    // Corrector with centering.
    rxs = z.cwiseProduct(s) + dz_aff.cwiseProduct(ds_aff);
    rxs.array() -= sigma * mu;
    f = rxs.cwiseQuotient(z) - rc;
    if (solve_refined(lp, theta, f, -rb, dz, dy) > kDirectionAccuracy) {
      stop_or_fail("interior point: search direction lost accuracy");
      return out;
    }
    ds = -(rxs + s.cwiseProduct(dz)).cwiseQuotient(z);

    const double unbounded = std::numeric_limits<double>::infinity();
    const double ap =
        std::min(1.0, options.step_fraction * max_step(z, dz, unbounded));
    const double ad =
        std::min(1.0, options.step_fraction * max_step(s, ds, unbounded));
    z += ap * dz;
    y += ad * dy;
    s += ad * ds;
  }
}

}  // namespace fluidmimo
