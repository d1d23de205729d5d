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
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fluidmimo/channel.hpp"

namespace fluidmimo {

/// One active port per fluid antenna, 0-based.
///
/// rx_ports[i] is the port of receive antenna i, tx_ports[j] the port of
/// transmit antenna j. Equivalent to binary vectors x, y with exactly one
/// nonzero per antenna group.
struct PortSelection {
  std::vector<int> rx_ports;
  std::vector<int> tx_ports;

  /// Every antenna gets port 0.
  static PortSelection first_ports(const ArrayDims& dims);

  /// Throws DimensionError on a length or range mismatch.
  void validate(const ArrayDims& dims) const;

  friend bool operator==(const PortSelection&, const PortSelection&) = default;
};

/// Indicator vectors (x, y) of a selection.
std::pair<Eigen::VectorXd, Eigen::VectorXd> to_indicators(
    const PortSelection& sel, const ArrayDims& dims);

/// Inverse of to_indicators. Throws DimensionError unless every antenna group
/// of x and y is a 0/1 vector with exactly one 1.
PortSelection from_indicators(std::span<const double> x,
                              std::span<const double> y,
                              const ArrayDims& dims);

/// m_r x m_t effective channel: entry (i, j) is G at the selected ports.
Eigen::MatrixXcd extract_effective(const OverallChannel& channel,
                                   const PortSelection& sel);

/// log2 det(I + rho H H^H) in bits/s/Hz.
///
/// Works on the smaller Gram matrix (H^H H when cols < rows, otherwise H H^H)
/// and a complex Cholesky factorization. Throws DomainError for rho < 0 or
/// non-finite entries.
double capacity(const Eigen::MatrixXcd& effective, double rho);

/// Capacity through the padded selection product Q = diag(x) G diag(y):
/// log2 det(I + rho Q Q^H) at full (m_r n_r) size. Intended for testing the
/// equivalence with capacity(extract_effective(...)); refuses products larger
/// than 1e7 entries with DimensionError.
double capacity_q_form(const OverallChannel& channel, const PortSelection& sel,
                       double rho);

/// Concave surrogate sum |g|^2 min(x_r, y_c) over all (row, col) pairs.
/// Components must lie in [0, 1], otherwise DomainError.
double surrogate_u(const OverallChannel& channel, std::span<const double> x,
                   std::span<const double> y);

/// (rho / ln 2) * u, an upper bound on the capacity at any binary point whose
/// surrogate value is u.
double capacity_upper_bound(double u_value, double rho);

/// Reusable capacity kernel for search loops.
///
/// Holds scratch storage so that repeated evaluations do not allocate. The
/// result is bit-identical to capacity(extract_effective(channel, sel), rho).
class CapacityEvaluator {
 public:
  CapacityEvaluator(const OverallChannel& channel, double rho);

  double operator()(std::span<const int> rx_ports,
                    std::span<const int> tx_ports);
  double operator()(const PortSelection& sel) {
    return (*this)(sel.rx_ports, sel.tx_ports);
  }

  /// Number of evaluations performed so far.
  std::uint64_t count() const noexcept { return count_; }

 private:
  const OverallChannel* channel_;
  double rho_;
  Eigen::MatrixXcd effective_;
  std::vector<std::complex<double>> gram_;
  std::uint64_t count_ = 0;
};

namespace detail {

/// Core kernel shared by capacity() and CapacityEvaluator. `gram` is scratch
/// of at least min(rows, cols)^2 entries.
double log2_det_gram(const Eigen::MatrixXcd& h, double rho,
                     std::vector<std::complex<double>>& gram);

}  // namespace detail

}  // namespace fluidmimo
