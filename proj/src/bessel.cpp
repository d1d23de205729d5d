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

#include "fluidmimo/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fluidmimo/errors.hpp"

namespace fluidmimo {

double bessel_j0(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("bessel_j0: argument must be finite and >= 0");
  }
  if (x < 8.0) {
    const double y = x * x;
    const double num =
        57568490574.0 +
        y * (-13362590354.0 +
             y * (651619640.7 +
                  y * (-11214424.18 + y * (77392.33017 + y * -184.9052456))));
    const double den =
        57568490411.0 +
        y * (1029532985.0 +
             y * (9494680.718 +
                  y * (59272.64853 + y * (267.8532712 + y * 1.0))));
    // rescaled so the origin is exactly 1; |J0| <= 1 must survive rounding
    constexpr double kOrigin = 57568490411.0 / 57568490574.0;
    return std::min(1.0, kOrigin * (num / den));
  }
  // Hankel expansion: J0(x) ~ sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4))
  const double z = 8.0 / x;
  const double y = z * z;
  const double phase = x - std::numbers::pi / 4.0;
  const double p =
      1.0 + y * (-0.1098628627e-2 +
                 y * (0.2734510407e-4 +
                      y * (-0.2073370639e-5 + y * 0.2093887211e-6)));
  const double q =
      -0.1562499995e-1 +
      y * (0.1430488765e-3 +
           y * (-0.6911147651e-5 +
                y * (0.7621095161e-6 - y * 0.934935152e-7)));
  return std::sqrt(2.0 / (std::numbers::pi * x)) *
         (std::cos(phase) * p - z * std::sin(phase) * q);
}

}  // namespace fluidmimo
