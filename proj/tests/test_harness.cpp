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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/harness.hpp"

using namespace fluidmimo;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.base.dims = {2, 2, 4, 4};
  spec.variable = SweepVariable::PortsPerAntenna;
  spec.values = {3, 4};
  spec.trials = 5;
  spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
  spec.master_seed = 9;
  return spec;
}

const PointSummary& find(const std::vector<PointSummary>& s, double point, Algorithm a) {
  for (const PointSummary& p : s) {
    if (p.point_value == point && p.algorithm == a) return p;
  }
  throw std::runtime_error("summary row missing");
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("sweep variable names") {
    CHECK(sweep_variable_name(SweepVariable::SnrDb) == "snr_db");
    CHECK(parse_sweep_variable("ports") == SweepVariable::PortsPerAntenna);
    CHECK(parse_sweep_variable("n") == SweepVariable::PortsPerAntenna);
    CHECK(parse_sweep_variable("snr") == SweepVariable::SnrDb);
    CHECK(parse_sweep_variable("w") == SweepVariable::AntennaSizeW);
    CHECK_FALSE(parse_sweep_variable("bandwidth").has_value());
  }

  TEST_CASE("one trial of one strategy gives one record") {
    SweepSpec spec = small_spec();
    spec.values = {4};
    spec.trials = 1;
    spec.algorithms = {Algorithm::Conventional};
    const SweepResult r = run_sweep(spec);
    CHECK(r.records.size() == 1);
    CHECK(r.summaries.size() == 1);
    CHECK(std::isnan(r.summaries[0].mean_ratio));
  }

  TEST_CASE("reruns and thread counts give identical records") {
    SweepSpec spec = small_spec();
    const SweepResult a = run_sweep(spec);
    const SweepResult b = run_sweep(spec);
    spec.threads = 3;
    const SweepResult c = run_sweep(spec);
    REQUIRE(a.records.size() == 2 * 5 * 5);
    REQUIRE(b.records.size() == a.records.size());
    REQUIRE(c.records.size() == a.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].capacity_bits == b.records[i].capacity_bits);
      CHECK(a.records[i].capacity_bits == c.records[i].capacity_bits);
      CHECK(a.records[i].algorithm == c.records[i].algorithm);
      CHECK(a.records[i].wall_time_ms == 0.0);
    }
    std::ostringstream x, y;
    write_records_csv(spec.variable, a.records, x);
    write_records_csv(spec.variable, c.records, y);
    CHECK(x.str() == y.str());
  }

  TEST_CASE("strategies see the same channel within a trial") {
    SweepSpec spec = small_spec();
    const SweepResult r = run_sweep(spec);
    for (const TrialRecord& rec : r.records) {
      if (rec.algorithm == Algorithm::Exhaustive) continue;
      for (const TrialRecord& opt : r.records) {
        if (opt.algorithm == Algorithm::Exhaustive && opt.point_index == rec.point_index &&
            opt.trial == rec.trial) {
          CHECK(rec.capacity_bits <= opt.capacity_bits + 1e-12);
        }
      }
    }
  }

  TEST_CASE("records are sorted by point, trial and name") {
    const SweepResult r = run_sweep(small_spec());
    for (std::size_t i = 1; i < r.records.size(); ++i) {
      const TrialRecord& a = r.records[i - 1];
      const TrialRecord& b = r.records[i];
      const auto key = [](const TrialRecord& t) {
        return std::make_tuple(t.point_value, t.trial, algorithm_name(t.algorithm));
      };
      CHECK(key(a) < key(b));
    }
  }

  TEST_CASE("seed layout") {
    SweepSpec spec = small_spec();
    CHECK(trial_seed(spec, 0, 3) != trial_seed(spec, 1, 3));
    CHECK(trial_seed(spec, 0, 3) != trial_seed(spec, 0, 4));
    spec.variable = SweepVariable::SnrDb;
    spec.values = {0.0, 10.0};
    CHECK(trial_seed(spec, 0, 3) == trial_seed(spec, 1, 3));
    spec.master_seed = 10;
    CHECK(trial_seed(spec, 0, 3) != trial_seed(small_spec(), 0, 3));
  }

  TEST_CASE("point configurations") {
    SweepSpec spec = small_spec();
    spec.base.dims = {2, 3, 4, 7};
    const FluidMimoConfig p = point_config(spec, 1);
    CHECK(p.dims.n_r == 4);
    CHECK(p.dims.n_t == 4);
    CHECK(p.dims.m_t == 3);
    spec.variable = SweepVariable::AntennaSizeW;
    spec.values = {0.1, 2.0};
    CHECK(point_config(spec, 1).w == 2.0);
    CHECK(point_config(spec, 1).dims.n_t == 7);
    spec.variable = SweepVariable::SnrDb;
    CHECK(point_config(spec, 0).snr_db == 0.1);
  }

  TEST_CASE("approximation ratios") {
    CHECK(approximation_ratio(3.0, 3.0) == 1.0);
    CHECK(approximation_ratio(0.0, 2.0) == 0.0);
    CHECK(approximation_ratio(0.0, 0.0) == 1.0);
    CHECK_FALSE(approximation_ratio(1.0, 0.0).has_value());
    CHECK(*approximation_ratio(1.5, 2.0) == doctest::Approx(0.75));
  }

  TEST_CASE("summary statistics") {
    std::vector<TrialRecord> recs;
    const double caps[] = {2.0, 4.0, 6.0};
    const double opts[] = {4.0, 4.0, 8.0};
    for (int t = 0; t < 3; ++t) {
      recs.push_back({.point_value = 5.0, .trial = t, .algorithm = Algorithm::JcrAo,
                      .capacity_bits = caps[t], .ao_iterations = t + 1});
      recs.push_back({.point_value = 5.0, .trial = t, .algorithm = Algorithm::Exhaustive,
                      .capacity_bits = opts[t]});
    }
    const auto s = summarize(recs);
    REQUIRE(s.size() == 2);
    const PointSummary& ao = find(s, 5.0, Algorithm::JcrAo);
    CHECK(ao.trials == 3);
    CHECK(ao.mean_capacity == doctest::Approx(4.0));
    CHECK(ao.stddev == doctest::Approx(2.0));
    CHECK(ao.ci95 == doctest::Approx(1.96 * 2.0 / std::sqrt(3.0)));
    CHECK(ao.mean_ratio == doctest::Approx((0.5 + 1.0 + 0.75) / 3.0));
    CHECK(ao.mean_ao_iterations == doctest::Approx(2.0));
    CHECK(find(s, 5.0, Algorithm::Exhaustive).mean_ratio == 1.0);
  }

  TEST_CASE("trials with a zero optimum are excluded from ratios") {
    std::vector<TrialRecord> recs;
    recs.push_back({.point_value = 1.0, .trial = 0, .algorithm = Algorithm::Random, .capacity_bits = 1.0});
    recs.push_back({.point_value = 1.0, .trial = 0, .algorithm = Algorithm::Exhaustive, .capacity_bits = 0.0});
    recs.push_back({.point_value = 1.0, .trial = 1, .algorithm = Algorithm::Random, .capacity_bits = 1.0});
    recs.push_back({.point_value = 1.0, .trial = 1, .algorithm = Algorithm::Exhaustive, .capacity_bits = 2.0});
    const auto s = summarize(recs);
    const PointSummary& r = find(s, 1.0, Algorithm::Random);
    CHECK(r.excluded_ratio_trials == 1);
    CHECK(r.mean_ratio == doctest::Approx(0.5));
  }

  TEST_CASE("csv layout") {
    SweepSpec spec = small_spec();
    spec.values = {3};
    spec.trials = 2;
    const SweepResult r = run_sweep(spec);
    std::ostringstream rec, sum;
    write_records_csv(spec.variable, r.records, rec);
    write_summary_csv(spec.variable, r.summaries, sum);
    std::istringstream a(rec.str()), b(sum.str());
    std::string line;
    std::getline(a, line);
    CHECK(line == "sweep_var,point_value,trial,algorithm,capacity_bits,ao_iterations,evaluations,wall_time_ms");
    std::getline(a, line);
    CHECK(line.rfind("ports,3.0,0,conventional,", 0) == 0);
    std::getline(b, line);
    CHECK(line == "sweep_var,point_value,algorithm,mean_capacity,stddev,ci95,mean_ratio,mean_ao_iterations");
    int rows = 0;
    while (std::getline(b, line)) ++rows;
    CHECK(rows == 5);
  }

  TEST_CASE("validation names the field") {
    const auto key_of = [](const SweepSpec& s) {
      try {
        s.validate();
      } catch (const ConfigError& e) {
        return e.key();
      }
      return std::string();
    };
    SweepSpec s = small_spec();
    s.algorithms.clear();
    CHECK(key_of(s) == "algos");
    s = small_spec();
    s.trials = 0;
    CHECK(key_of(s) == "trials");
    s = small_spec();
    s.values.clear();
    CHECK(key_of(s) == "values");
    s = small_spec();
    s.values = {2.5};
    CHECK(key_of(s) == "values");
    s = small_spec();
    s.ao.epsilon = 0.0;
    CHECK(key_of(s) == "epsilon");
    s = small_spec();
    s.values = {500};
    CHECK_THROWS_AS(s.validate(), CapExceeded);
    s.algorithms = {Algorithm::Conventional};
    CHECK_NOTHROW(s.validate());
  }

  TEST_CASE("mean ratios are ordered at the reference setup") {
    SweepSpec spec;
    spec.base.dims = {2, 2, 10, 10};
    spec.values = {10};
    spec.trials = 100;
    spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
    const auto s = run_sweep(spec).summaries;
    const double conv = find(s, 10, Algorithm::Conventional).mean_ratio;
    const double rnd = find(s, 10, Algorithm::Random).mean_ratio;
    const double ao = find(s, 10, Algorithm::JcrAo).mean_ratio;
    const double res = find(s, 10, Algorithm::JcrRes).mean_ratio;
    MESSAGE("ratios conventional " << conv << " random " << rnd << " ao " << ao << " res " << res);
    CHECK(conv < rnd);
    CHECK(rnd < ao);
    CHECK(ao <= res);
    CHECK(res <= 1.0);
  }

  TEST_CASE("capacity grows with snr on shared channels") {
    SweepSpec spec;
    spec.base.dims = {2, 2, 6, 6};
    spec.variable = SweepVariable::SnrDb;
    spec.values = {-5, 0, 5, 10, 15};
    spec.trials = 20;
    spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
    const auto s = run_sweep(spec).summaries;
    for (Algorithm a : all_algorithms()) {
      for (std::size_t k = 1; k < spec.values.size(); ++k) {
        CHECK(find(s, spec.values[k], a).mean_capacity > find(s, spec.values[k - 1], a).mean_capacity);
      }
    }
  }
}
