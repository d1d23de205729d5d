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

#include "fluidmimo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <tuple>

#include "fluidmimo/channel.hpp"
#include "fluidmimo/errors.hpp"
#include "fluidmimo/format.hpp"
#include "fluidmimo/seeding.hpp"

namespace fluidmimo {

namespace {

constexpr std::uint64_t kRandomBaselineStream = 0x72616e646f6dULL;

bool contains(const std::vector<Algorithm>& algorithms, Algorithm a) {
  return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
}

std::string point_label(const SweepSpec& spec, std::size_t point) {
  return std::string(sweep_variable_name(spec.variable)) + "=" +
         to_decimal(spec.values[point]);
}

}  // namespace

std::string_view sweep_variable_name(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::PortsPerAntenna: return "ports";
    case SweepVariable::SnrDb: return "snr_db";
    case SweepVariable::AntennaSizeW: return "w";
  }
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  if (name == "ports" || name == "n") return SweepVariable::PortsPerAntenna;
  if (name == "snr_db" || name == "snr") return SweepVariable::SnrDb;
  if (name == "w") return SweepVariable::AntennaSizeW;
  return std::nullopt;
}

void SweepSpec::validate() const {
  base.validate();
  if (values.empty()) throw ConfigError("values", "at least one sweep value is required");
  for (std::size_t p = 0; p < values.size(); ++p) {
    const double v = values[p];
    if (!std::isfinite(v)) throw ConfigError("values", "must be finite");
    if (p > 0 && !(v > values[p - 1])) {
      throw ConfigError("values", "must be strictly increasing");
    }
    if (variable == SweepVariable::PortsPerAntenna &&
        (v < 1.0 || v != std::floor(v) || v > 1e6)) {
      throw ConfigError("values", "port counts must be positive integers");
    }
    if (variable == SweepVariable::AntennaSizeW && v < 0.0) {
      throw ConfigError("values", "aperture sizes must be >= 0");
    }
  }
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (algorithms.empty()) throw ConfigError("algos", "at least one algorithm is required");
  if (std::set<Algorithm>(algorithms.begin(), algorithms.end()).size() !=
      algorithms.size()) {
    throw ConfigError("algos", "duplicate algorithm");
  }
  if (!(ao.epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
  if (ao.max_iterations < 1) throw ConfigError("max-iters", "must be >= 1");
  if (random_samples < 0) throw ConfigError("samples", "must be >= 0");

  for (std::size_t p = 0; p < values.size(); ++p) {
    const ArrayDims d = point_config(*this, p).dims;
    if (contains(algorithms, Algorithm::Exhaustive) &&
        d.combinations() > exhaustive_cap) {
      throw CapExceeded(d.combinations(), exhaustive_cap, point_label(*this, p));
    }
    const ArrayDims reduced{d.m_r, d.m_t, std::min(reduced_port_count(d.n_r), d.n_r),
                            std::min(reduced_port_count(d.n_t), d.n_t)};
    if (contains(algorithms, Algorithm::JcrRes) &&
        reduced.combinations() > kDefaultExhaustiveCap) {
      throw CapExceeded(reduced.combinations(), kDefaultExhaustiveCap,
                        "reduced search at " + point_label(*this, p));
    }
  }
}

FluidMimoConfig point_config(const SweepSpec& spec, std::size_t point) {
  FluidMimoConfig config = spec.base;
  const double v = spec.values.at(point);
  switch (spec.variable) {
    case SweepVariable::PortsPerAntenna:
      config.dims.n_r = config.dims.n_t = static_cast<int>(v);
      break;
    case SweepVariable::SnrDb:
      config.snr_db = v;
      break;
    case SweepVariable::AntennaSizeW:
      config.w = v;
      break;
  }
  return config;
}

std::uint64_t trial_seed(const SweepSpec& spec, std::size_t point, int trial) {
  const std::uint64_t key = spec.variable == SweepVariable::SnrDb ? 0 : point;
  return derive_seed(spec.master_seed, {key, static_cast<std::uint64_t>(trial)});
}

std::optional<double> approximation_ratio(double achieved, double optimal) {
  if (optimal > 0.0) return achieved / optimal;
  if (achieved == 0.0) return 1.0;
  return std::nullopt;
}

namespace {

std::vector<TrialRecord> run_trial(const SweepSpec& spec, std::size_t point,
                                   int trial) {
  using Clock = std::chrono::steady_clock;
  auto elapsed_ms = [&](Clock::time_point since) {
    if (!spec.record_timing) return 0.0;
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  };

  const FluidMimoConfig config = point_config(spec, point);
  const std::uint64_t seed = trial_seed(spec, point, trial);
  const OverallChannel channel = generate_channel(config, seed);
  const double rho = config.rho();

  std::optional<RelaxedSolution> relaxed;
  double relax_ms = 0.0;
  if (contains(spec.algorithms, Algorithm::JcrRes) ||
      contains(spec.algorithms, Algorithm::JcrAo)) {
    const auto start = Clock::now();
    relaxed = solve_jcr(channel);
    relax_ms = elapsed_ms(start);
  }

  std::vector<TrialRecord> records;
  for (Algorithm algorithm : spec.algorithms) {
    const auto start = Clock::now();
    SelectionResult result;
    double extra_ms = 0.0;
    switch (algorithm) {
      case Algorithm::Exhaustive:
        result = exhaustive_search(channel, rho, spec.exhaustive_cap);
        break;
      case Algorithm::JcrRes:
        result = jcr_res(channel, rho, *relaxed);
        extra_ms = relax_ms;
        break;
      case Algorithm::JcrAo:
        result = jcr_ao(channel, rho, *relaxed, spec.ao);
        extra_ms = relax_ms;
        break;
      case Algorithm::Random: {
        const int samples = spec.random_samples > 0
                                ? spec.random_samples
                                : default_random_samples(config.dims);
        result = random_selection(channel, rho, samples,
                                  derive_seed(seed, {kRandomBaselineStream}));
        break;
      }
      case Algorithm::Conventional:
        result = conventional_mimo(channel, rho);
        break;
    }
    records.push_back({spec.values[point], static_cast<int>(point), trial,
                       algorithm, result.capacity_bits, result.iterations,
                       result.evaluations, elapsed_ms(start) + extra_ms});
  }
  return records;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t points = spec.values.size();
  const std::size_t tasks = points * static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<TrialRecord>> slots(tasks);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      try {
        slots[task] = run_trial(spec, task / spec.trials,
                                static_cast<int>(task % spec.trials));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    }
  };

  unsigned threads = spec.threads == 0 ? std::thread::hardware_concurrency()
                                       : spec.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(tasks, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  for (auto& slot : slots) {
    result.records.insert(result.records.end(), slot.begin(), slot.end());
  }
  sort_records(result.records);
  result.summaries = summarize(result.records);
  return result;
}

void sort_records(std::vector<TrialRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return std::make_tuple(a.point_value, a.trial, algorithm_name(a.algorithm)) <
                     std::make_tuple(b.point_value, b.trial, algorithm_name(b.algorithm));
            });
}

std::vector<PointSummary> summarize(std::span<const TrialRecord> records) {
  std::map<std::pair<double, int>, double> optimum;
  for (const TrialRecord& r : records) {
    if (r.algorithm == Algorithm::Exhaustive) {
      optimum[{r.point_value, r.trial}] = r.capacity_bits;
    }
  }

  struct Accumulator {
    std::vector<double> capacities;
    double ratio_sum = 0.0;
    int ratio_count = 0;
    int excluded = 0;
    double ao_iterations = 0.0;
  };
  std::map<std::pair<double, std::string_view>, std::pair<Algorithm, Accumulator>> groups;
  for (const TrialRecord& r : records) {
    auto& [algorithm, acc] = groups[{r.point_value, algorithm_name(r.algorithm)}];
    algorithm = r.algorithm;
    acc.capacities.push_back(r.capacity_bits);
    acc.ao_iterations += r.ao_iterations;
    if (auto it = optimum.find({r.point_value, r.trial}); it != optimum.end()) {
      if (auto ratio = approximation_ratio(r.capacity_bits, it->second)) {
        acc.ratio_sum += *ratio;
        ++acc.ratio_count;
      } else {
        ++acc.excluded;
      }
    }
  }

  std::vector<PointSummary> out;
  for (const auto& [key, entry] : groups) {
    const auto& [algorithm, acc] = entry;
    const auto n = static_cast<double>(acc.capacities.size());
    PointSummary s;
    s.point_value = key.first;
    s.algorithm = algorithm;
    s.trials = static_cast<int>(acc.capacities.size());
    double sum = 0.0;
    for (double c : acc.capacities) sum += c;
    s.mean_capacity = sum / n;
    double squares = 0.0;
    for (double c : acc.capacities) squares += (c - s.mean_capacity) * (c - s.mean_capacity);
    s.stddev = acc.capacities.size() > 1 ? std::sqrt(squares / (n - 1.0)) : 0.0;
    s.ci95 = 1.96 * s.stddev / std::sqrt(n);
    if (acc.ratio_count > 0) s.mean_ratio = acc.ratio_sum / acc.ratio_count;
    s.excluded_ratio_trials = acc.excluded;
    s.mean_ao_iterations = acc.ao_iterations / n;
    out.push_back(s);
  }
  return out;
}

void write_records_csv(SweepVariable variable,
                       std::span<const TrialRecord> records, std::ostream& out) {
  out << "sweep_var,point_value,trial,algorithm,capacity_bits,ao_iterations,"
         "evaluations,wall_time_ms\n";
  const std::string_view var = sweep_variable_name(variable);
  for (const TrialRecord& r : records) {
    out << var << ',' << to_decimal(r.point_value) << ',' << r.trial << ','
        << algorithm_name(r.algorithm) << ',' << to_decimal(r.capacity_bits)
        << ',' << r.ao_iterations << ',' << r.evaluations << ','
        << to_decimal(r.wall_time_ms) << '\n';
  }
}

void write_summary_csv(SweepVariable variable,
                       std::span<const PointSummary> summaries,
                       std::ostream& out) {
  out << "sweep_var,point_value,algorithm,mean_capacity,stddev,ci95,"
         "mean_ratio,mean_ao_iterations\n";
  const std::string_view var = sweep_variable_name(variable);
  for (const PointSummary& s : summaries) {
    out << var << ',' << to_decimal(s.point_value) << ','
        << algorithm_name(s.algorithm) << ',' << to_decimal(s.mean_capacity)
        << ',' << to_decimal(s.stddev) << ',' << to_decimal(s.ci95) << ','
        << to_decimal(s.mean_ratio) << ',' << to_decimal(s.mean_ao_iterations)
        << '\n';
  }
}

}  // namespace fluidmimo
