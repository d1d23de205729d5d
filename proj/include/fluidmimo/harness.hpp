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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fluidmimo/config.hpp"
#include "fluidmimo/port_selection.hpp"

namespace fluidmimo {

enum class SweepVariable { PortsPerAntenna, SnrDb, AntennaSizeW };

/// "ports", "snr_db", "w".
std::string_view sweep_variable_name(SweepVariable variable);
/// Accepts the names above plus the aliases "n" and "snr".
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

struct SweepSpec {
  FluidMimoConfig base;
  SweepVariable variable = SweepVariable::PortsPerAntenna;
  std::vector<double> values;
  int trials = 100;
  std::vector<Algorithm> algorithms;
  std::uint64_t master_seed = 1;
  AoOptions ao;
  double exhaustive_cap = kDefaultExhaustiveCap;
  /// Random-baseline draws per trial; 0 selects default_random_samples().
  int random_samples = 0;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// When false, wall_time_ms is recorded as 0 so reruns are byte-identical.
  bool record_timing = false;

  /// Throws ConfigError naming the offending field, or CapExceeded naming the
  /// first point where exhaustive search would exceed its cap.
  void validate() const;
};

/// Base config with the swept quantity set to values[point]. Sweeping ports
/// sets n_r = n_t = value.
FluidMimoConfig point_config(const SweepSpec& spec, std::size_t point);

/// Channel seed for a trial.
///
/// derive_seed(master_seed, {point, trial}) for port and aperture sweeps. SNR
/// sweeps use point 0 for every point: the channel does not depend on the SNR,
/// so all points see the same realizations.
std::uint64_t trial_seed(const SweepSpec& spec, std::size_t point, int trial);

struct TrialRecord {
  double point_value = 0.0;
  int point_index = 0;
  int trial = 0;
  Algorithm algorithm = Algorithm::Exhaustive;
  double capacity_bits = 0.0;
  int ao_iterations = 0;
  std::uint64_t evaluations = 0;
  double wall_time_ms = 0.0;
};

struct PointSummary {
  double point_value = 0.0;
  Algorithm algorithm = Algorithm::Exhaustive;
  int trials = 0;
  double mean_capacity = 0.0;
  double stddev = 0.0;  ///< sample standard deviation
  double ci95 = 0.0;    ///< 1.96 stddev / sqrt(trials)
  /// vs exhaustive; NaN when exhaustive did not run
  double mean_ratio = std::numeric_limits<double>::quiet_NaN();
  int excluded_ratio_trials = 0;
  double mean_ao_iterations = 0.0;
};

/// achieved / optimal. A zero optimum gives 1 when achieved is also zero and
/// no value otherwise.
std::optional<double> approximation_ratio(double achieved, double optimal);

struct SweepResult {
  std::vector<TrialRecord> records;  ///< sorted by (point, trial, name)
  std::vector<PointSummary> summaries;
};

SweepResult run_sweep(const SweepSpec& spec);

/// Sorts records by (point, trial, algorithm name).
void sort_records(std::vector<TrialRecord>& records);

/// Per-(point, algorithm) statistics, in (point, algorithm name) order.
std::vector<PointSummary> summarize(std::span<const TrialRecord> records);

// Header: sweep_var,point_value,trial,algorithm,capacity_bits,ao_iterations,
//         evaluations,wall_time_ms
void write_records_csv(SweepVariable variable,
                       std::span<const TrialRecord> records, std::ostream& out);

// Header: sweep_var,point_value,algorithm,mean_capacity,stddev,ci95,
//         mean_ratio,mean_ao_iterations
void write_summary_csv(SweepVariable variable,
                       std::span<const PointSummary> summaries,
                       std::ostream& out);

}  // namespace fluidmimo
