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

#include "fluidmimo/jcr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/format.hpp"

namespace fluidmimo {

LpProblem build_lp(const OverallChannel& channel) {
  LpProblem problem{channel.dims(), {}};
  const Eigen::MatrixXd gains = channel.power_gains();
  for (int r = 0; r < gains.rows(); ++r) {
    for (int c = 0; c < gains.cols(); ++c) {
      if (gains(r, c) > 0.0) problem.edges.push_back({r, c, gains(r, c)});
    }
  }
  return problem;
}

void write_lp(const LpProblem& problem, std::ostream& out) {
  const ArrayDims& d = problem.dims;
  auto x_name = [&](int r) {
    return "x_" + std::to_string(r / d.n_r + 1) + "_" + std::to_string(r % d.n_r + 1);
  };
  auto y_name = [&](int c) {
    return "y_" + std::to_string(c / d.n_t + 1) + "_" + std::to_string(c % d.n_t + 1);
  };
  auto t_name = [](const LpEdge& e) {
    return "t_" + std::to_string(e.row + 1) + "_" + std::to_string(e.col + 1);
  };

  out << "\\ joint relaxation of fluid-MIMO port selection\n";
  out << "Maximize\n obj:";
  if (problem.edges.empty()) out << " 0 " << x_name(0);
  for (const LpEdge& e : problem.edges) {
    out << " + " << to_decimal(e.weight) << ' ' << t_name(e);
  }
  out << "\nSubject To\n";
  for (int i = 0; i < d.m_r; ++i) {
    out << " rx_" << i + 1 << ':';
    for (int n = 0; n < d.n_r; ++n) out << (n ? " + " : " ") << x_name(i * d.n_r + n);
    out << " = 1\n";
  }
  for (int j = 0; j < d.m_t; ++j) {
    out << " tx_" << j + 1 << ':';
    for (int k = 0; k < d.n_t; ++k) out << (k ? " + " : " ") << y_name(j * d.n_t + k);
    out << " = 1\n";
  }
  for (const LpEdge& e : problem.edges) {
    out << " cx_" << e.row + 1 << '_' << e.col + 1 << ": " << t_name(e) << " - "
        << x_name(e.row) << " <= 0\n";
    out << " cy_" << e.row + 1 << '_' << e.col + 1 << ": " << t_name(e) << " - "
        << y_name(e.col) << " <= 0\n";
  }
  out << "End\n";
}

namespace {

// Standard form of the epigraph LP.
//
// Variables: [x | y | t | s1 | s2], with s1 = x_row - t and s2 = y_col - t.
// Rows:      [rx simplex | tx simplex | P: x_row - t - s1 = 0 | Q: y_col - t - s2 = 0]
// Cost:      -weight on t (the solver minimizes).
class EpigraphLp final : public StandardFormLp {
 public:
  explicit EpigraphLp(const LpProblem& problem)
      : p_(problem),
        nx_(problem.num_x()),
        ny_(problem.num_y()),
        ne_(problem.num_t()),
        ms_(problem.dims.m_r + problem.dims.m_t) {
    c_ = Eigen::VectorXd::Zero(num_variables());
    for (int e = 0; e < ne_; ++e) c_[t(e)] = -p_.edges[e].weight;
    b_ = Eigen::VectorXd::Zero(num_constraints());
    b_.head(ms_).setOnes();
  }

  int num_variables() const override { return nx_ + ny_ + 3 * ne_; }
  int num_constraints() const override { return ms_ + 2 * ne_; }
  const Eigen::VectorXd& cost() const override { return c_; }
  const Eigen::VectorXd& rhs() const override { return b_; }

  Eigen::VectorXd multiply(const Eigen::VectorXd& z) const override {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(num_constraints());
    for (int r = 0; r < nx_; ++r) out[rx_row(r)] += z[r];
    for (int c = 0; c < ny_; ++c) out[tx_row(c)] += z[nx_ + c];
    for (int e = 0; e < ne_; ++e) {
      const LpEdge& edge = p_.edges[e];
      out[ms_ + e] = z[edge.row] - z[t(e)] - z[s1(e)];
      out[ms_ + ne_ + e] = z[nx_ + edge.col] - z[t(e)] - z[s2(e)];
    }
    return out;
  }

  Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& y) const override {
    Eigen::VectorXd out(num_variables());
    for (int r = 0; r < nx_; ++r) out[r] = y[rx_row(r)];
    for (int c = 0; c < ny_; ++c) out[nx_ + c] = y[tx_row(c)];
    for (int e = 0; e < ne_; ++e) {
      const LpEdge& edge = p_.edges[e];
      const double lp = y[ms_ + e];
      const double lq = y[ms_ + ne_ + e];
      out[edge.row] += lp;
      out[nx_ + edge.col] += lq;
      out[t(e)] = -lp - lq;
      out[s1(e)] = -lp;
      out[s2(e)] = -lq;
    }
    return out;
  }

  // Each pair contributes a 2x2 block L = [[tt + t1, tt], [tt, tt + t2]] in the
  // multipliers of its P and Q rows. Eliminating (t, s1, s2, P, Q) per pair
  // leaves an SPD system N in (x, y) plus the simplex rows, which is solved
  // through the Schur complement E N^-1 E'.
  bool factorize(const Eigen::VectorXd& theta) override {
    theta_ = theta;
    const int nv = nx_ + ny_;
    inv11_.resize(ne_);
    inv12_.resize(ne_);
    inv22_.resize(ne_);
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(nv, nv);
    for (int v = 0; v < nv; ++v) n(v, v) = 1.0 / theta[v];
    for (int e = 0; e < ne_; ++e) {
      const double tt = theta[t(e)], t1 = theta[s1(e)], t2 = theta[s2(e)];
      const double det = tt * t1 + tt * t2 + t1 * t2;
      inv11_[e] = (tt + t2) / det;
      inv12_[e] = -tt / det;
      inv22_[e] = (tt + t1) / det;
      const int r = p_.edges[e].row;
      const int c = nx_ + p_.edges[e].col;
      n(r, r) += inv11_[e];
      n(c, c) += inv22_[e];
      n(r, c) += inv12_[e];
      n(c, r) += inv12_[e];
    }
    // Pairs with x = y = t make N nearly singular along the indicator of each
    // active component; the simplex rows pin those directions, so the
    // bordered system [N E'; E 0] is factorized instead of N alone.
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nv + ms_, nv + ms_);
    k.topLeftCorner(nv, nv) = n;
    for (int r = 0; r < nx_; ++r) k(r, nv + rx_row(r)) = k(nv + rx_row(r), r) = 1.0;
    for (int c = 0; c < ny_; ++c) {
      k(nx_ + c, nv + tx_row(c)) = k(nv + tx_row(c), nx_ + c) = 1.0;
    }
    bordered_.compute(k);
    return bordered_.rcond() > 0.0 && std::isfinite(bordered_.rcond());
  }

  // Conjugate gradients on the normal equations A Theta A' dy = g + A Theta f,
  // preconditioned by the eliminated solve. The elimination alone loses
  // accuracy once theta spans many decades; the normal-equation residual
  // is what the outer iteration needs to be small.
  void solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
             Eigen::VectorXd& dz, Eigen::VectorXd& dy) const override {
    const Eigen::VectorXd rhs = g + multiply(theta_.cwiseProduct(f));
    const auto normal = [&](const Eigen::VectorXd& v) {
      return multiply(theta_.cwiseProduct(multiply_transpose(v)));
    };
    const auto precondition = [&](const Eigen::VectorXd& r) {
      Eigen::VectorXd pz, py;
      eliminated_solve(Eigen::VectorXd::Zero(num_variables()), r, pz, py);
      return py;
    };

    const double target = 1e-14 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
    dy = precondition(rhs);
    Eigen::VectorXd r = rhs - normal(dy);
    Eigen::VectorXd zr = precondition(r);
    Eigen::VectorXd p = zr;
    double rz = r.dot(zr);
    for (int k = 0; k < kMaxCgIterations && r.lpNorm<Eigen::Infinity>() > target; ++k) {
      const Eigen::VectorXd ap = normal(p);
      const double pap = p.dot(ap);
      if (!(pap > 0.0)) break;
      const double step = rz / pap;
      dy += step * p;
      const Eigen::VectorXd r_prev = r;
      r -= step * ap;
      const Eigen::VectorXd z_next = precondition(r);
      // Polak-Ribiere form tolerates a slightly nonsymmetric preconditioner.
      const double rz_next = r.dot(z_next);
      const double beta = std::max(0.0, (rz_next - r_prev.dot(z_next)) / rz);
      p = z_next + beta * p;
      rz = rz_next;
    }
    dz = theta_.cwiseProduct(multiply_transpose(dy) - f);
  }

 private:
  static constexpr int kMaxCgIterations = 50;

  void eliminated_solve(const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                        Eigen::VectorXd& dz, Eigen::VectorXd& dy) const {
    const int nv = nx_ + ny_;
    Eigen::VectorXd alpha(ne_), beta(ne_);
    Eigen::VectorXd h = -f.head(nv);
    for (int e = 0; e < ne_; ++e) {
      const double tt = theta_[t(e)];
      alpha[e] = g[ms_ + e] - tt * f[t(e)] - theta_[s1(e)] * f[s1(e)];
      beta[e] = g[ms_ + ne_ + e] - tt * f[t(e)] - theta_[s2(e)] * f[s2(e)];
      h[p_.edges[e].row] += inv11_[e] * alpha[e] + inv12_[e] * beta[e];
      h[nx_ + p_.edges[e].col] += inv12_[e] * alpha[e] + inv22_[e] * beta[e];
    }

    // N v - E' lambda = h,  E v = g_simplex.
    Eigen::VectorXd rhs(nv + ms_);
    rhs << h, g.head(ms_);
    const Eigen::VectorXd sol = bordered_.solve(rhs);
    const Eigen::VectorXd v = sol.head(nv);
    const Eigen::VectorXd lambda = -sol.tail(ms_);

    dz.resize(num_variables());
    dy.resize(num_constraints());
    dz.head(nv) = v;
    dy.head(ms_) = lambda;
    for (int e = 0; e < ne_; ++e) {
      const double ax = alpha[e] - v[p_.edges[e].row];
      const double by = beta[e] - v[nx_ + p_.edges[e].col];
      const double lp = inv11_[e] * ax + inv12_[e] * by;
      const double lq = inv12_[e] * ax + inv22_[e] * by;
      dy[ms_ + e] = lp;
      dy[ms_ + ne_ + e] = lq;
      dz[t(e)] = -theta_[t(e)] * (f[t(e)] + lp + lq);
      dz[s1(e)] = -theta_[s1(e)] * (f[s1(e)] + lp);
      dz[s2(e)] = -theta_[s2(e)] * (f[s2(e)] + lq);
    }
  }

 public:
  // Same problem as an explicit matrix, for the dense route.
  DenseLp to_dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_constraints(), num_variables());
    for (int r = 0; r < nx_; ++r) a(rx_row(r), r) = 1.0;
    for (int c = 0; c < ny_; ++c) a(tx_row(c), nx_ + c) = 1.0;
    for (int e = 0; e < ne_; ++e) {
      a(ms_ + e, p_.edges[e].row) = 1.0;
      a(ms_ + e, t(e)) = -1.0;
      a(ms_ + e, s1(e)) = -1.0;
      a(ms_ + ne_ + e, nx_ + p_.edges[e].col) = 1.0;
      a(ms_ + ne_ + e, t(e)) = -1.0;
      a(ms_ + ne_ + e, s2(e)) = -1.0;
    }
    return DenseLp(std::move(a), b_, c_);
  }

 private:
  int t(int e) const { return nx_ + ny_ + e; }
  int s1(int e) const { return nx_ + ny_ + ne_ + e; }
  int s2(int e) const { return nx_ + ny_ + 2 * ne_ + e; }
  int rx_row(int r) const { return r / p_.dims.n_r; }
  int tx_row(int c) const { return p_.dims.m_r + c / p_.dims.n_t; }

  const LpProblem& p_;
  int nx_, ny_, ne_, ms_;
  Eigen::VectorXd c_, b_, theta_;
  Eigen::VectorXd inv11_, inv12_, inv22_;
  Eigen::PartialPivLU<Eigen::MatrixXd> bordered_;
};

}  // namespace

RelaxedSolution solve_lp(const LpProblem& problem, KktMethod method,
                         const IpmOptions& options) {
  problem.dims.validate();
  EpigraphLp structured(problem);
  IpmResult result;
  if (method == KktMethod::DenseNormal) {
    if (problem.num_x() > 40 || problem.num_y() > 40) {
      throw DimensionError("dense KKT route is limited to 40 ports per side");
    }
    DenseLp dense = structured.to_dense();
    result = solve_standard_form(dense, options);
  } else {
    result = solve_standard_form(structured, options);
  }

  const ArrayDims& d = problem.dims;
  RelaxedSolution out;
  out.x_hat = result.z.head(d.rows()).cwiseMax(0.0).cwiseMin(1.0);
  out.y_hat = result.z.segment(d.rows(), d.cols()).cwiseMax(0.0).cwiseMin(1.0);
  out.u_star = -structured.cost().dot(result.z);
  // Prices of the maximization problem are the negated minimization ones.
  out.rx_duals = -result.y.head(d.m_r);
  out.tx_duals = -result.y.segment(d.m_r, d.m_t);
  out.stats = result.stats;
  return out;
}

RelaxedSolution solve_jcr(const OverallChannel& channel, KktMethod method,
                          const IpmOptions& options) {
  return solve_lp(build_lp(channel), method, options);
}

}  // namespace fluidmimo
