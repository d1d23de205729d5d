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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "fluidmimo/config.hpp"

namespace fluidmimo {

/// Port-pair spatial correlation coefficients, n_r x n_t, each in [-1, 1].
///
/// mu(n, k) = (J0(2 pi n w / (n_r - 1)) + J0(2 pi k w / (n_t - 1))) / 2 with
/// 0-based n, k. A side with a single port contributes J0(0) = 1.
struct CorrelationProfile {
  Eigen::MatrixXd mu;
};

CorrelationProfile correlation_profile(int n_r, int n_t, double w);

/// Overall channel matrix G of size (m_r n_r) x (m_t n_t).
///
/// Row r = i * n_r + n and column c = j * n_t + k (all 0-based) hold the
/// coefficient between port n of receive antenna i and port k of transmit
/// antenna j.
class OverallChannel {
 public:
  /// Throws DimensionError if `entries` does not match `dims`.
  OverallChannel(const ArrayDims& dims, Eigen::MatrixXcd entries);

  const ArrayDims& dims() const noexcept { return dims_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

  int row_index(int rx_antenna, int port) const noexcept {
    return rx_antenna * dims_.n_r + port;
  }
  int col_index(int tx_antenna, int port) const noexcept {
    return tx_antenna * dims_.n_t + port;
  }

  std::complex<double> coefficient(int rx_antenna, int rx_port,
                                   int tx_antenna, int tx_port) const {
    return entries_(row_index(rx_antenna, rx_port),
                    col_index(tx_antenna, tx_port));
  }

  /// |g|^2 for every entry.
  Eigen::MatrixXd power_gains() const { return entries_.cwiseAbs2(); }

  friend bool operator==(const OverallChannel& a, const OverallChannel& b) {
    return a.dims_ == b.dims_ && a.entries_ == b.entries_;
  }

 private:
  ArrayDims dims_;
  Eigen::MatrixXcd entries_;
};

/// Draws a spatially correlated Rayleigh channel.
///
/// Each block (i, j) uses its own generator, seeded with
/// derive_seed(seed, {i, j}) and fed to std::mt19937_64. Within a block the
/// draw order is u0, v0, then (u, v) for every (n, k) in row-major order.
/// All components are N(0, 1/2) and
///   g = sqrt(1 - mu^2) (u + i v) + mu (u0 + i v0).
/// Identical (config, seed) always produce an identical matrix.
OverallChannel generate_channel(const FluidMimoConfig& config,
                                std::uint64_t seed);

}  // namespace fluidmimo
