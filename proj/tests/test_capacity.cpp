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
#include <limits>
#include <numbers>
#include <random>

#include "fluidmimo/capacity.hpp"
#include "fluidmimo/channel.hpp"
#include "fluidmimo/errors.hpp"
#include "oracles.hpp"

using namespace fluidmimo;

namespace {

std::vector<double> as_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

TEST_SUITE("capacity") {
  TEST_CASE("effective channel of a single coefficient") {
    const OverallChannel ch(ArrayDims{1, 1, 1, 1},
                            Eigen::MatrixXcd::Constant(1, 1, {0.3, -0.4}));
    const auto h = extract_effective(ch, PortSelection::first_ports(ch.dims()));
    CHECK(h.rows() == 1);
    CHECK(h(0, 0) == std::complex<double>(0.3, -0.4));
  }

  TEST_CASE("effective channel picks the indexed entry") {
    Eigen::MatrixXcd g(2, 2);
    g << 1.0, 2.0, 3.0, 4.0;
    const OverallChannel ch(ArrayDims{1, 1, 2, 2}, g);
    const auto h = extract_effective(ch, PortSelection{{1}, {0}});
    CHECK(h(0, 0) == std::complex<double>(3.0, 0.0));
  }

  TEST_CASE("effective channel equals the stripped selection product") {
    std::mt19937_64 rng(17);
    const ArrayDims d{2, 2, 2, 2};
    for (int trial = 0; trial < 20; ++trial) {
      const OverallChannel ch = oracle::random_channel(d, rng);
      oracle::for_each_selection(d, [&](const PortSelection& sel) {
        const auto expected = oracle::stripped_q(ch, oracle::to_binary(sel, d));
        CHECK(extract_effective(ch, sel) == expected);
      });
    }
  }

  TEST_CASE("capacity of simple matrices") {
    CHECK(capacity(Eigen::MatrixXcd::Identity(2, 2), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(capacity(Eigen::MatrixXcd::Zero(3, 2), 7.0) == 0.0);
    CHECK(capacity(Eigen::MatrixXcd::Constant(1, 1, 2.0), 1.0) ==
          doctest::Approx(std::log2(5.0)).epsilon(1e-14));
    CHECK(capacity(Eigen::MatrixXcd::Identity(2, 2), 0.0) == 0.0);
  }

  TEST_CASE("capacity agrees with an eigenvalue computation for every shape") {
    std::mt19937_64 rng(5);
    for (int rows = 1; rows <= 5; ++rows) {
      for (int cols = 1; cols <= 5; ++cols) {
        for (double rho : {0.1, 1.0, 31.6}) {
          const Eigen::MatrixXcd h = oracle::random_complex(rows, cols, rng);
          const double expected = oracle::capacity_eig(h, rho);
          CHECK(std::abs(capacity(h, rho) - expected) <= 1e-10 * std::max(1.0, expected));
        }
      }
    }
  }

  TEST_CASE("rank-deficient channels stay finite") {
    Eigen::MatrixXcd h(3, 3);
    h << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 0.0, 0.0;
    CHECK(std::abs(capacity(h, 2.0) - oracle::capacity_eig(h, 2.0)) < 1e-12);
  }

  TEST_CASE("capacity rejects bad input") {
    CHECK_THROWS_AS(capacity(Eigen::MatrixXcd::Identity(2, 2), -1.0), DomainError);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
    h(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(capacity(h, 1.0), DomainError);
  }

  TEST_CASE("full-size selection form equals the effective form") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> m(1, 3), n(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
      const ArrayDims d{m(rng), m(rng), n(rng), n(rng)};
      const OverallChannel ch = oracle::random_channel(d, rng);
      PortSelection sel{std::vector<int>(d.m_r), std::vector<int>(d.m_t)};
      for (int& p : sel.rx_ports) p = std::uniform_int_distribution<int>(0, d.n_r - 1)(rng);
      for (int& p : sel.tx_ports) p = std::uniform_int_distribution<int>(0, d.n_t - 1)(rng);
      const double rho = rho_from_snr_db(5.0, d.m_t);
      const double direct = capacity(extract_effective(ch, sel), rho);
      CHECK(std::abs(capacity_q_form(ch, sel, rho) - direct) <= 1e-9 * std::max(1.0, direct));
      CHECK(capacity_q_form(ch, sel, 0.0) == doctest::Approx(0.0));
    }
    const OverallChannel one(ArrayDims{1, 1, 1, 1}, Eigen::MatrixXcd::Constant(1, 1, {1.0, 1.0}));
    CHECK(capacity_q_form(one, PortSelection{{0}, {0}}, 3.0) ==
          doctest::Approx(std::log2(1.0 + 3.0 * 2.0)));
  }

  TEST_CASE("surrogate on binary points is the squared norm of the selection product") {
    std::mt19937_64 rng(21);
    const ArrayDims d{2, 2, 3, 2};
    for (int trial = 0; trial < 10; ++trial) {
      const OverallChannel ch = oracle::random_channel(d, rng);
      oracle::for_each_selection(d, [&](const PortSelection& sel) {
        const auto [x, y] = to_indicators(sel, d);
        const double u = surrogate_u(ch, as_vector(x), as_vector(y));
        const double fro = oracle::q_matrix(ch, oracle::to_binary(sel, d)).squaredNorm();
        CHECK(std::abs(u - fro) <= 1e-12 * std::max(1.0, fro));
      });
    }
  }

  TEST_CASE("surrogate simple values") {
    const OverallChannel ones(ArrayDims{1, 1, 2, 2}, Eigen::MatrixXcd::Ones(2, 2));
    const std::vector<double> half{0.5, 0.5}, zero{0.0, 0.0};
    CHECK(surrogate_u(ones, half, half) == doctest::Approx(2.0));
    CHECK(surrogate_u(ones, zero, half) == 0.0);
    const std::vector<double> bad{1.5, 0.0};
    CHECK_THROWS_AS(surrogate_u(ones, bad, half), DomainError);
    const std::vector<double> short_x{1.0};
    CHECK_THROWS_AS(surrogate_u(ones, short_x, half), DimensionError);
  }

  TEST_CASE("upper bound values") {
    CHECK(capacity_upper_bound(0.0, 3.0) == 0.0);
    CHECK(capacity_upper_bound(std::numbers::ln2, 1.0) == doctest::Approx(1.0));
  }

  TEST_CASE("upper bound dominates capacity at every binary point") {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> m(1, 2), n(1, 4);
    std::uniform_real_distribution<double> snr(-5.0, 20.0);
    int points = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const ArrayDims d{m(rng), m(rng), n(rng), n(rng)};
      const OverallChannel ch = oracle::random_channel(d, rng);
      const double rho = rho_from_snr_db(snr(rng), d.m_t);
      oracle::for_each_selection(d, [&](const PortSelection& sel) {
        const auto [x, y] = to_indicators(sel, d);
        const double u = surrogate_u(ch, as_vector(x), as_vector(y));
        CHECK(capacity(extract_effective(ch, sel), rho) <= capacity_upper_bound(u, rho) + 1e-9);
        ++points;
      });
    }
    CHECK(points > 200);
  }

  TEST_CASE("evaluator matches the free function bit for bit") {
    std::mt19937_64 rng(4);
    const ArrayDims d{2, 3, 3, 2};
    const OverallChannel ch = oracle::random_channel(d, rng);
    CapacityEvaluator eval(ch, 1.7);
    std::uint64_t calls = 0;
    oracle::for_each_selection(d, [&](const PortSelection& sel) {
      CHECK(eval(sel) == capacity(extract_effective(ch, sel), 1.7));
      ++calls;
    });
    CHECK(eval.count() == calls);
  }

  TEST_CASE("indicator conversion") {
    const ArrayDims d{2, 1, 3, 2};
    const PortSelection sel{{2, 0}, {1}};
    const auto [x, y] = to_indicators(sel, d);
    CHECK(x.sum() == 2.0);
    CHECK(x[2] == 1.0);
    CHECK(x[3] == 1.0);
    CHECK(y[1] == 1.0);
    CHECK(from_indicators(as_vector(x), as_vector(y), d) == sel);
    std::vector<double> two{1.0, 1.0, 0.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(from_indicators(two, as_vector(y), d), DimensionError);
    std::vector<double> frac{0.5, 0.5, 0.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(from_indicators(frac, as_vector(y), d), DimensionError);
  }

  TEST_CASE("selection validation") {
    const ArrayDims d{2, 2, 3, 3};
    CHECK_NOTHROW(PortSelection::first_ports(d).validate(d));
    CHECK_THROWS_AS((PortSelection{{0}, {0, 0}}.validate(d)), DimensionError);
    CHECK_THROWS_AS((PortSelection{{0, 3}, {0, 0}}.validate(d)), DimensionError);
    CHECK_THROWS_AS((PortSelection{{0, -1}, {0, 0}}.validate(d)), DimensionError);
  }
}
