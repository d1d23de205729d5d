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

#include "fluidmimo/port_selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "fluidmimo/errors.hpp"

namespace fluidmimo {

namespace {

constexpr std::array<Algorithm, 5> kAlgorithms = {
    Algorithm::Exhaustive, Algorithm::JcrRes, Algorithm::JcrAo,
    Algorithm::Random, Algorithm::Conventional};

}  // namespace

std::span<const Algorithm> all_algorithms() { return kAlgorithms; }

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Exhaustive: return "exhaustive";
    case Algorithm::JcrRes: return "jcr-res";
    case Algorithm::JcrAo: return "jcr-ao";
    case Algorithm::Random: return "random";
    case Algorithm::Conventional: return "conventional";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

SelectionResult exhaustive_search(const OverallChannel& channel, double rho,
                                  double cap) {
  const ArrayDims& d = channel.dims();
  const double combinations = d.combinations();
  if (combinations > cap) throw CapExceeded(combinations, cap);

  CapacityEvaluator evaluate(channel, rho);
  PortSelection current = PortSelection::first_ports(d);
  SelectionResult best{.selection = current,
                       .capacity_bits = evaluate(current),
                       .algorithm = Algorithm::Exhaustive};

  // Odometer over (rx_0 .. rx_{m_r-1}, tx_0 .. tx_{m_t-1}); the last transmit
  // antenna is the fastest digit.
  for (;;) {
    int j = d.m_t - 1;
    while (j >= 0 && current.tx_ports[j] == d.n_t - 1) current.tx_ports[j--] = 0;
    if (j >= 0) {
      ++current.tx_ports[j];
    } else {
      int i = d.m_r - 1;
      while (i >= 0 && current.rx_ports[i] == d.n_r - 1) current.rx_ports[i--] = 0;
      if (i < 0) break;
      ++current.rx_ports[i];
    }
    const double value = evaluate(current);
    if (value > best.capacity_bits) {
      best.capacity_bits = value;
      best.selection = current;
    }
  }
  best.evaluations = evaluate.count();
  return best;
}

int reduced_port_count(int n) {
  if (n < 1) throw ConfigError("ports", "must be >= 1");
  // Smallest k with 2^k >= n + 1.
  int k = 0;
  while ((std::uint64_t{1} << k) < static_cast<std::uint64_t>(n) + 1) ++k;
  return k;
}

std::vector<int> top_ports(std::span<const double> weights, int keep) {
  std::vector<int> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  keep = std::clamp(keep, 0, static_cast<int>(order.size()));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

SelectionResult jcr_res(const OverallChannel& channel, double rho,
                        const RelaxedSolution& relaxed) {
  const ArrayDims& d = channel.dims();
  const int keep_r = std::min(reduced_port_count(d.n_r), d.n_r);
  const int keep_t = std::min(reduced_port_count(d.n_t), d.n_t);

  std::vector<std::vector<int>> rx_kept(d.m_r), tx_kept(d.m_t);
  for (int i = 0; i < d.m_r; ++i) {
    rx_kept[i] = top_ports(
        std::span<const double>(relaxed.x_hat.data() + i * d.n_r, d.n_r), keep_r);
  }
  for (int j = 0; j < d.m_t; ++j) {
    tx_kept[j] = top_ports(
        std::span<const double>(relaxed.y_hat.data() + j * d.n_t, d.n_t), keep_t);
  }

  const ArrayDims reduced_dims{d.m_r, d.m_t, keep_r, keep_t};
  Eigen::MatrixXcd sub(reduced_dims.rows(), reduced_dims.cols());
  for (int i = 0; i < d.m_r; ++i) {
    for (int a = 0; a < keep_r; ++a) {
      for (int j = 0; j < d.m_t; ++j) {
        for (int b = 0; b < keep_t; ++b) {
          sub(i * keep_r + a, j * keep_t + b) =
              channel.coefficient(i, rx_kept[i][a], j, tx_kept[j][b]);
        }
      }
    }
  }
  const OverallChannel reduced(reduced_dims, std::move(sub));
  SelectionResult result = exhaustive_search(reduced, rho);

  result.algorithm = Algorithm::JcrRes;
  for (int i = 0; i < d.m_r; ++i) {
    result.selection.rx_ports[i] = rx_kept[i][result.selection.rx_ports[i]];
  }
  for (int j = 0; j < d.m_t; ++j) {
    result.selection.tx_ports[j] = tx_kept[j][result.selection.tx_ports[j]];
  }
  return result;
}

SelectionResult jcr_res(const OverallChannel& channel, double rho) {
  return jcr_res(channel, rho, solve_jcr(channel));
}

PortSelection ao_round(const RelaxedSolution& relaxed, const ArrayDims& dims) {
  if (relaxed.x_hat.size() != dims.rows() || relaxed.y_hat.size() != dims.cols()) {
    throw DimensionError("relaxed solution does not match the array dimensions");
  }
  auto argmax = [](const Eigen::VectorXd& v, int offset, int count) {
    int best = 0;
    for (int p = 1; p < count; ++p) {
      if (v[offset + p] > v[offset + best]) best = p;
    }
    return best;
  };
  PortSelection sel = PortSelection::first_ports(dims);
  for (int i = 0; i < dims.m_r; ++i) sel.rx_ports[i] = argmax(relaxed.x_hat, i * dims.n_r, dims.n_r);
  for (int j = 0; j < dims.m_t; ++j) sel.tx_ports[j] = argmax(relaxed.y_hat, j * dims.n_t, dims.n_t);
  return sel;
}

SelectionResult jcr_ao(const OverallChannel& channel, double rho,
                       const RelaxedSolution& relaxed,
                       const AoOptions& options) {
  if (!(options.epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
  if (options.max_iterations < 1) throw ConfigError("max-iters", "must be >= 1");
  const ArrayDims& d = channel.dims();

  CapacityEvaluator evaluate(channel, rho);
  SelectionResult result{.selection = ao_round(relaxed, d), .algorithm = Algorithm::JcrAo};
  PortSelection& sel = result.selection;

  double c_new = evaluate(sel);
  double c_best = c_new;
  double c_old = 0.0;
  int sweeps = 0;
  result.sweep_capacities.push_back(c_new);

  // For each antenna of one side, try every port with all other antennas
  // fixed and keep the last port reaching the running best.
  auto sweep_side = [&](std::vector<int>& ports, int ports_per_antenna) {
    for (int& port : ports) {
      int port_best = port;
      for (int p = 0; p < ports_per_antenna; ++p) {
        port = p;
        const double value = evaluate(sel);
        if (value >= c_best) {
          c_best = value;
          port_best = p;
        }
      }
      port = port_best;
    }
  };

  while (std::abs(c_new - c_old) > std::abs(c_old) * options.epsilon &&
         sweeps < options.max_iterations) {
    c_old = c_new;
    sweep_side(sel.rx_ports, d.n_r);
    sweep_side(sel.tx_ports, d.n_t);
    c_new = c_best;
    ++sweeps;
    result.sweep_capacities.push_back(c_new);
  }

  result.capacity_bits = c_new;
  result.iterations = sweeps;
  result.evaluations = evaluate.count();
  return result;
}

SelectionResult jcr_ao(const OverallChannel& channel, double rho,
                       const AoOptions& options) {
  return jcr_ao(channel, rho, solve_jcr(channel), options);
}

int default_random_samples(const ArrayDims& dims) {
  return 5 * (dims.rows() + dims.cols());
}

SelectionResult random_selection(const OverallChannel& channel, double rho,
                                 int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("samples", "must be >= 1");
  const ArrayDims& d = channel.dims();
  CapacityEvaluator evaluate(channel, rho);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rx_port(0, d.n_r - 1);
  std::uniform_int_distribution<int> tx_port(0, d.n_t - 1);

  PortSelection draw = PortSelection::first_ports(d);
  SelectionResult best{
      .selection = draw, .capacity_bits = -1.0, .algorithm = Algorithm::Random};
  for (int s = 0; s < samples; ++s) {
    for (int& p : draw.rx_ports) p = rx_port(rng);
    for (int& p : draw.tx_ports) p = tx_port(rng);
    const double value = evaluate(draw);
    if (value > best.capacity_bits) {
      best.capacity_bits = value;
      best.selection = draw;
    }
  }
  best.evaluations = evaluate.count();
  return best;
}

SelectionResult conventional_mimo(const OverallChannel& channel, double rho) {
  CapacityEvaluator evaluate(channel, rho);
  SelectionResult result{.selection = PortSelection::first_ports(channel.dims()),
                         .algorithm = Algorithm::Conventional};
  result.capacity_bits = evaluate(result.selection);
  result.evaluations = evaluate.count();
  return result;
}

}  // namespace fluidmimo
