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

// End-to-end checks of the library against its acceptance criteria. Prints
// one PASS/FAIL line per criterion and exits non-zero if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "fluidmimo/bessel.hpp"
#include "fluidmimo/capacity.hpp"
#include "fluidmimo/channel.hpp"
#include "fluidmimo/harness.hpp"
#include "fluidmimo/jcr.hpp"
#include "fluidmimo/port_selection.hpp"
#include "oracles.hpp"

using namespace fluidmimo;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

ArrayDims random_dims(std::mt19937_64& rng, int max_m, int max_n) {
  std::uniform_int_distribution<int> m(1, max_m), n(1, max_n);
  return {m(rng), m(rng), n(rng), n(rng)};
}

OverallChannel random_instance(std::mt19937_64& rng, const ArrayDims& d) {
  FluidMimoConfig c;
  c.dims = d;
  c.w = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
  return generate_channel(c, rng());
}

std::vector<double> as_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

const PointSummary& summary_for(const std::vector<PointSummary>& s, double point,
                                Algorithm a) {
  for (const PointSummary& p : s) {
    if (p.point_value == point && p.algorithm == a) return p;
  }
  throw std::runtime_error("missing summary row");
}

Verdict selection_product_equivalence() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const ArrayDims d = random_dims(rng, 3, 4);
    const OverallChannel ch = random_instance(rng, d);
    PortSelection sel{std::vector<int>(d.m_r), std::vector<int>(d.m_t)};
    for (int& p : sel.rx_ports) p = std::uniform_int_distribution<int>(0, d.n_r - 1)(rng);
    for (int& p : sel.tx_ports) p = std::uniform_int_distribution<int>(0, d.n_t - 1)(rng);
    const double rho = rho_from_snr_db(std::uniform_real_distribution<double>(-5, 20)(rng), d.m_t);
    const double direct = capacity(extract_effective(ch, sel), rho);
    const double padded = capacity_q_form(ch, sel, rho);
    worst = std::max(worst, std::abs(padded - direct) / std::max(1.0, direct));
  }
  std::ostringstream s;
  s << "500 instances, worst relative difference " << worst;
  return {worst <= 1e-9, s.str()};
}

Verdict surrogate_bound_suite() {
  std::mt19937_64 rng(202);
  double worst_identity = 0.0, worst_excess = -1e300;
  long points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ArrayDims d = random_dims(rng, 2, 4);
    const OverallChannel ch = random_instance(rng, d);
    const double rho = rho_from_snr_db(std::uniform_real_distribution<double>(-5, 20)(rng), d.m_t);
    oracle::for_each_selection(d, [&](const PortSelection& sel) {
      const auto [x, y] = to_indicators(sel, d);
      const double u = surrogate_u(ch, as_vector(x), as_vector(y));
      const double fro = oracle::q_matrix(ch, oracle::to_binary(sel, d)).squaredNorm();
      worst_identity = std::max(worst_identity, std::abs(u - fro));
      worst_excess = std::max(worst_excess, capacity(extract_effective(ch, sel), rho) -
                                                capacity_upper_bound(u, rho));
      ++points;
    });
  }
  std::ostringstream s;
  s << points << " binary points, worst |U - ||Q||^2| " << worst_identity
    << ", worst capacity - bound " << worst_excess;
  return {worst_identity <= 1e-12 && worst_excess <= 1e-9, s.str()};
}

Verdict relaxation_dominance() {
  std::mt19937_64 rng(303);
  double worst = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const ArrayDims d = random_dims(rng, 2, 3);
    const OverallChannel ch = random_instance(rng, d);
    worst = std::min(worst, solve_jcr(ch).u_star - oracle::max_binary_u(ch));
  }
  const OverallChannel gap(ArrayDims{1, 1, 2, 2}, Eigen::MatrixXcd::Ones(2, 2));
  const double u_gap = solve_jcr(gap).u_star;
  const double binary_gap = oracle::max_binary_u(gap);
  const double grid_gap = oracle::grid_max_u_2x2(Eigen::Matrix2d::Ones(), 1000);
  std::ostringstream s;
  s << "min(u_star - binary max) " << worst << "; gap instance u_star " << std::setprecision(10)
    << u_gap << " (grid " << grid_gap << ") vs binary " << binary_gap;
  const bool ok = worst >= -1e-6 && std::abs(u_gap - 2.0) <= 1e-6 &&
                  std::abs(grid_gap - 2.0) <= 1e-9 && binary_gap == 1.0;
  return {ok, s.str()};
}

Verdict coordinate_ascent_monotone() {
  FluidMimoConfig c;
  const AoOptions opts;
  long sweeps = 0;
  int max_sweeps = 0;
  bool monotone = true;
  for (int trial = 0; trial < 500; ++trial) {
    const OverallChannel ch = generate_channel(c, 700000 + trial);
    const SelectionResult r = jcr_ao(ch, c.rho(), opts);
    for (std::size_t k = 1; k < r.sweep_capacities.size(); ++k) {
      monotone = monotone && r.sweep_capacities[k] >= r.sweep_capacities[k - 1];
    }
    sweeps += r.iterations;
    max_sweeps = std::max(max_sweeps, r.iterations);
  }
  const double mean = sweeps / 500.0;
  std::ostringstream s;
  s << "500 instances, monotone " << (monotone ? "yes" : "no") << ", mean sweeps " << mean
    << ", max sweeps " << max_sweeps;
  return {monotone && max_sweeps <= opts.max_iterations && mean <= 4.0, s.str()};
}

Verdict ratio_reproduction() {
  SweepSpec spec;
  spec.base.dims = {2, 2, 20, 20};
  spec.base.snr_db = 5.0;
  spec.base.w = 0.5;
  spec.values = {20};
  spec.trials = 100;
  spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
  spec.threads = 0;
  const auto s = run_sweep(spec).summaries;
  const std::pair<Algorithm, double> targets[] = {{Algorithm::Conventional, 0.44},
                                                  {Algorithm::Random, 0.83},
                                                  {Algorithm::JcrAo, 0.92},
                                                  {Algorithm::JcrRes, 0.96}};
  Verdict v;
  std::ostringstream out;
  out << std::fixed << std::setprecision(1);
  for (const auto& [a, target] : targets) {
    const double ratio = summary_for(s, 20, a).mean_ratio;
    out << algorithm_name(a) << ' ' << 100 * ratio << "% (target " << 100 * target << "%) ";
    v.pass = v.pass && std::abs(ratio - target) <= 0.06;
  }
  v.detail = out.str();
  return v;
}

Verdict snr_trend() {
  SweepSpec spec;
  spec.base.dims = {2, 2, 10, 10};
  spec.variable = SweepVariable::SnrDb;
  spec.values = {-5, 0, 5, 10, 15};
  spec.trials = 100;
  spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
  spec.threads = 0;
  const auto s = run_sweep(spec).summaries;
  Verdict v;
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  for (Algorithm a : all_algorithms()) {
    out << algorithm_name(a) << " [";
    for (std::size_t k = 0; k < spec.values.size(); ++k) {
      const double m = summary_for(s, spec.values[k], a).mean_capacity;
      out << (k ? " " : "") << m;
      if (k > 0) v.pass = v.pass && m > summary_for(s, spec.values[k - 1], a).mean_capacity;
    }
    out << "] ";
  }
  v.detail = out.str();
  return v;
}

Verdict aperture_saturation() {
  SweepSpec spec;
  spec.base.dims = {2, 2, 10, 10};
  spec.variable = SweepVariable::AntennaSizeW;
  spec.values = {0.1, 0.5, 1, 2, 5};
  spec.trials = 100;
  spec.algorithms = {Algorithm::JcrRes};
  spec.threads = 0;
  const auto s = run_sweep(spec).summaries;
  const PointSummary& w01 = summary_for(s, 0.1, Algorithm::JcrRes);
  const PointSummary& w1 = summary_for(s, 1, Algorithm::JcrRes);
  const PointSummary& w5 = summary_for(s, 5, Algorithm::JcrRes);
  const bool separated = w5.mean_capacity - w5.ci95 > w01.mean_capacity + w01.ci95;
  const bool saturating =
      w5.mean_capacity - w1.mean_capacity < w1.mean_capacity - w01.mean_capacity;
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << "jcr-res means:";
  for (double w : spec.values) {
    const PointSummary& p = summary_for(s, w, Algorithm::JcrRes);
    out << " W=" << w << ' ' << p.mean_capacity << "+-" << p.ci95;
  }
  return {separated && saturating, out.str()};
}

Verdict bessel_accuracy() {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = 8.0 * i / 9999.0;
    worst = std::max(worst, std::abs(bessel_j0(x) - oracle::j0_series(x)));
  }
  std::ostringstream s;
  s << "10^4 points on [0, 8], worst absolute error " << worst;
  return {worst <= 1e-7, s.str()};
}

Verdict sweep_determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "fluidmimo_acceptance";
  std::string texts[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::remove_all(dir);
    std::ostringstream out, err;
    const int code = cli::run({"sweep", "--sweep", "ports", "--values", "4,6", "--m", "2",
                               "--trials", "20", "--master-seed", "2024", "--out-dir",
                               dir.string()},
                              out, err);
    if (code != 0) return {false, "sweep exited with " + std::to_string(code) + ": " + err.str()};
    std::ifstream in(dir / "records.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    texts[run] = ss.str();
  }
  fs::remove_all(root);
  const bool same = !texts[0].empty() && texts[0] == texts[1];
  return {same, std::to_string(texts[0].size()) + " bytes, identical: " + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "selection-product capacity equivalence", 10, selection_product_equivalence},
      {2, "surrogate identity and capacity bound", 30, surrogate_bound_suite},
      {3, "relaxation dominance and gap witness", 60, relaxation_dominance},
      {4, "coordinate-ascent monotonicity", 120, coordinate_ascent_monotone},
      {5, "approximation ratios at M=2, N=20", 300, ratio_reproduction},
      {6, "capacity increases with SNR", 300, snr_trend},
      {7, "capacity saturates with aperture", 300, aperture_saturation},
      {8, "Bessel J0 accuracy", 1, bessel_accuracy},
      {9, "sweep determinism", 300, sweep_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      v.pass = false;
      v.detail += " [over time limit]";
    }
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name
              << "  (" << std::fixed << std::setprecision(2) << secs << " s, limit "
              << std::setprecision(0) << c.limit_s << " s)  " << v.detail << std::endl;
    std::cout.unsetf(std::ios::floatfield);
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
