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

#include "fluidmimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fluidmimo/bessel.hpp"
#include "fluidmimo/errors.hpp"
#include "fluidmimo/seeding.hpp"

namespace fluidmimo {

namespace {

// J0 term for port `index` out of `count` evenly spaced over w wavelengths.
double port_term(int index, int count, double w) {
  if (count == 1) return 1.0;
  return bessel_j0(2.0 * std::numbers::pi * index * w / (count - 1));
}

}  // namespace

CorrelationProfile correlation_profile(int n_r, int n_t, double w) {
  if (n_r < 1) throw ConfigError("nr", "must be >= 1");
  if (n_t < 1) throw ConfigError("nt", "must be >= 1");
  if (!std::isfinite(w) || w < 0.0) throw ConfigError("w", "must be >= 0");

  Eigen::VectorXd rx(n_r), tx(n_t);
  for (int n = 0; n < n_r; ++n) rx[n] = port_term(n, n_r, w);
  for (int k = 0; k < n_t; ++k) tx[k] = port_term(k, n_t, w);

  CorrelationProfile profile;
  profile.mu.resize(n_r, n_t);
  for (int n = 0; n < n_r; ++n) {
    for (int k = 0; k < n_t; ++k) profile.mu(n, k) = 0.5 * (rx[n] + tx[k]);
  }
  return profile;
}

OverallChannel::OverallChannel(const ArrayDims& dims, Eigen::MatrixXcd entries)
    : dims_(dims), entries_(std::move(entries)) {
  dims_.validate();
  if (entries_.rows() != dims_.rows() || entries_.cols() != dims_.cols()) {
    throw DimensionError("channel matrix is " +
                         std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()) + ", expected " +
                         std::to_string(dims_.rows()) + "x" +
                         std::to_string(dims_.cols()));
  }
}

OverallChannel generate_channel(const FluidMimoConfig& config,
                                std::uint64_t seed) {
  config.validate();
  const ArrayDims& d = config.dims;
  const CorrelationProfile profile = correlation_profile(d.n_r, d.n_t, config.w);

  Eigen::MatrixXcd g(d.rows(), d.cols());
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (int i = 0; i < d.m_r; ++i) {
    for (int j = 0; j < d.m_t; ++j) {
      std::mt19937_64 rng(derive_seed(
          seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
      normal.reset();
      const double u0 = normal(rng);
      const double v0 = normal(rng);
      for (int n = 0; n < d.n_r; ++n) {
        for (int k = 0; k < d.n_t; ++k) {
          const double u = normal(rng);
          const double v = normal(rng);
          const double mu = profile.mu(n, k);
          const double spread = std::sqrt(std::max(0.0, 1.0 - mu * mu));
          g(i * d.n_r + n, j * d.n_t + k) = {spread * u + mu * u0,
                                             spread * v + mu * v0};
        }
      }
    }
  }
  return OverallChannel(d, std::move(g));
}

}  // namespace fluidmimo
