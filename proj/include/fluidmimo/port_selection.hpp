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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fluidmimo/capacity.hpp"
#include "fluidmimo/channel.hpp"
#include "fluidmimo/jcr.hpp"

namespace fluidmimo {

enum class Algorithm { Exhaustive, JcrRes, JcrAo, Random, Conventional };

/// All five strategies in declaration order.
std::span<const Algorithm> all_algorithms();

/// "exhaustive", "jcr-res", "jcr-ao", "random", "conventional".
std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SelectionResult {
  PortSelection selection;
  double capacity_bits = 0.0;
  Algorithm algorithm = Algorithm::Exhaustive;
  int iterations = 0;             ///< AO sweeps; 0 for other strategies
  std::uint64_t evaluations = 0;  ///< capacity evaluations performed
  /// AO only: capacity after initialization, then after every sweep.
  std::vector<double> sweep_capacities{};
};

inline constexpr double kDefaultExhaustiveCap = 1e8;

struct AoOptions {
  double epsilon = 1e-3;
  int max_iterations = 20;
};

/// Global optimum by enumerating every selection.
///
/// Mixed-radix order: receive antennas are the most significant digits,
/// transmit antennas the least, ports ascending. The first selection reaching
/// the maximum wins ties. Throws CapExceeded when the number of selections is
/// above `cap`.
SelectionResult exhaustive_search(const OverallChannel& channel, double rho,
                                  double cap = kDefaultExhaustiveCap);

/// ceil(log2(n + 1)): ports kept per antenna by the reduced search.
int reduced_port_count(int n);

/// Indices of the `keep` largest weights, ties to the lower index, returned
/// in ascending index order.
std::vector<int> top_ports(std::span<const double> weights, int keep);

/// Relaxation followed by exhaustive search over the best-weighted ports.
SelectionResult jcr_res(const OverallChannel& channel, double rho,
                        const RelaxedSolution& relaxed);
SelectionResult jcr_res(const OverallChannel& channel, double rho);

/// Per antenna, the port of largest fractional weight (ties to the lowest).
PortSelection ao_round(const RelaxedSolution& relaxed, const ArrayDims& dims);

/// Relaxation, rounding, then cyclic per-antenna best-port sweeps.
///
/// Sweeps continue while |C_new - C_old| > |C_old| epsilon and fewer than
/// max_iterations sweeps have run, with C_old starting at 0. Within a sweep a
/// candidate replaces the running best when its capacity is >= the best so
/// far, so the last of several equal ports wins.
SelectionResult jcr_ao(const OverallChannel& channel, double rho,
                       const RelaxedSolution& relaxed,
                       const AoOptions& options = {});
SelectionResult jcr_ao(const OverallChannel& channel, double rho,
                       const AoOptions& options = {});

/// 5 (m_r n_r + m_t n_t); equals 10 N M when both sides share N and M.
int default_random_samples(const ArrayDims& dims);

/// Best of `samples` uniform selections drawn with replacement.
SelectionResult random_selection(const OverallChannel& channel, double rho,
                                 int samples, std::uint64_t seed);

/// Port 0 on every antenna.
SelectionResult conventional_mimo(const OverallChannel& channel, double rho);

}  // namespace fluidmimo
