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

#include "fluidmimo/bessel.hpp"
#include "fluidmimo/errors.hpp"
#include "oracles.hpp"

using fluidmimo::bessel_j0;

TEST_SUITE("bessel") {
  TEST_CASE("value at zero is one") { CHECK(bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-12)); }

  TEST_CASE("value at one") {
    CHECK(std::abs(bessel_j0(1.0) - 0.7651977) < 1e-6);
    CHECK(std::abs(bessel_j0(1.0) - oracle::j0_series(1.0)) < 1e-8);
  }

  TEST_CASE("first zero") {
    const double z = oracle::j0_first_zero();
    CHECK(std::abs(z - 2.4048256) < 1e-6);
    CHECK(std::abs(bessel_j0(z)) < 1e-6);
    CHECK(std::abs(bessel_j0(2.4048256)) < 1e-6);
  }

  TEST_CASE("matches the power series on a dense grid over [0, 8]") {
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double x = 8.0 * i / 10000.0;
      worst = std::max(worst, std::abs(bessel_j0(x) - oracle::j0_series(x)));
    }
    CHECK(worst <= 1e-7);
  }

  TEST_CASE("large arguments follow the standard library") {
    double worst = 0.0;
    for (int i = 0; i <= 5000; ++i) {
      const double x = 8.0 + 192.0 * i / 5000.0;
      worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("continuous across the switch point") {
    CHECK(std::abs(bessel_j0(8.0 - 1e-12) - bessel_j0(8.0 + 1e-12)) < 1e-8);
  }

  TEST_CASE("rejects negative and non-finite input") {
    CHECK_THROWS_AS(bessel_j0(-1e-9), fluidmimo::DomainError);
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::quiet_NaN()),
                    fluidmimo::DomainError);
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::infinity()),
                    fluidmimo::DomainError);
  }
}
