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

#include "fluidmimo/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fluidmimo/errors.hpp"

namespace fluidmimo {

PortSelection PortSelection::first_ports(const ArrayDims& dims) {
  return {std::vector<int>(dims.m_r, 0), std::vector<int>(dims.m_t, 0)};
}

void PortSelection::validate(const ArrayDims& dims) const {
  if (static_cast<int>(rx_ports.size()) != dims.m_r ||
      static_cast<int>(tx_ports.size()) != dims.m_t) {
    throw DimensionError("selection has " + std::to_string(rx_ports.size()) +
                         " rx and " + std::to_string(tx_ports.size()) +
                         " tx antennas, expected " + std::to_string(dims.m_r) +
                         " and " + std::to_string(dims.m_t));
  }
  for (int p : rx_ports) {
    if (p < 0 || p >= dims.n_r) {
      throw DimensionError("rx port " + std::to_string(p) + " out of range");
    }
  }
  for (int p : tx_ports) {
    if (p < 0 || p >= dims.n_t) {
      throw DimensionError("tx port " + std::to_string(p) + " out of range");
    }
  }
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> to_indicators(
    const PortSelection& sel, const ArrayDims& dims) {
  sel.validate(dims);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dims.rows());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dims.cols());
  for (int i = 0; i < dims.m_r; ++i) x[i * dims.n_r + sel.rx_ports[i]] = 1.0;
  for (int j = 0; j < dims.m_t; ++j) y[j * dims.n_t + sel.tx_ports[j]] = 1.0;
  return {std::move(x), std::move(y)};
}

namespace {

std::vector<int> decode_group(std::span<const double> v, int antennas,
                              int ports, const char* side) {
  if (static_cast<int>(v.size()) != antennas * ports) {
    throw DimensionError(std::string(side) + " indicator has wrong length");
  }
  std::vector<int> chosen(antennas, -1);
  for (int a = 0; a < antennas; ++a) {
    for (int p = 0; p < ports; ++p) {
      const double value = v[a * ports + p];
      if (value == 1.0) {
        if (chosen[a] != -1) {
          throw DimensionError(std::string(side) + " antenna " +
                               std::to_string(a) + " has several active ports");
        }
        chosen[a] = p;
      } else if (value != 0.0) {
        throw DimensionError(std::string(side) + " indicator is not binary");
      }
    }
    if (chosen[a] == -1) {
      throw DimensionError(std::string(side) + " antenna " + std::to_string(a) +
                           " has no active port");
    }
  }
  return chosen;
}

void require_rho(double rho) {
  if (!std::isfinite(rho) || rho < 0.0) {
    throw DomainError("rho must be finite and >= 0");
  }
}

}  // namespace

PortSelection from_indicators(std::span<const double> x,
                              std::span<const double> y,
                              const ArrayDims& dims) {
  return {decode_group(x, dims.m_r, dims.n_r, "rx"),
          decode_group(y, dims.m_t, dims.n_t, "tx")};
}

Eigen::MatrixXcd extract_effective(const OverallChannel& channel,
                                   const PortSelection& sel) {
  const ArrayDims& d = channel.dims();
  sel.validate(d);
  Eigen::MatrixXcd h(d.m_r, d.m_t);
  for (int i = 0; i < d.m_r; ++i) {
    for (int j = 0; j < d.m_t; ++j) {
      h(i, j) = channel.coefficient(i, sel.rx_ports[i], j, sel.tx_ports[j]);
    }
  }
  return h;
}

namespace detail {

double log2_det_gram(const Eigen::MatrixXcd& h, double rho,
                     std::vector<std::complex<double>>& gram) {
  const Eigen::Index rows = h.rows();
  const Eigen::Index cols = h.cols();
  // H^H H is the smaller Gram matrix only when cols < rows.
  const bool use_cols = cols < rows;
  const Eigen::Index p = use_cols ? cols : rows;
  const Eigen::Index inner = use_cols ? rows : cols;

  if (p == 1) {
    return std::max(0.0, std::log1p(rho * h.squaredNorm()) / std::numbers::ln2);
  }

  gram.resize(static_cast<std::size_t>(p * p));
  auto at = [&](Eigen::Index a, Eigen::Index b) -> std::complex<double>& {
    return gram[static_cast<std::size_t>(a * p + b)];
  };
  // Lower triangle of I + rho * Gram.
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      std::complex<double> sum = 0.0;
      for (Eigen::Index l = 0; l < inner; ++l) {
        sum += use_cols ? std::conj(h(l, a)) * h(l, b)
                        : h(a, l) * std::conj(h(b, l));
      }
      at(a, b) = rho * sum;
    }
    at(a, a) += 1.0;
  }

  // In-place Cholesky; log det accumulates the squared pivots.
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    double pivot = at(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(at(j, k));
    if (!(pivot > 0.0)) {
      throw DomainError("capacity: Gram matrix is not positive definite");
    }
    log_det += std::log(pivot);
    const double diag = std::sqrt(pivot);
    at(j, j) = diag;
    for (Eigen::Index i = j + 1; i < p; ++i) {
      std::complex<double> v = at(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= at(i, k) * std::conj(at(j, k));
      at(i, j) = v / diag;
    }
  }
  return std::max(0.0, log_det / std::numbers::ln2);
}

}  // namespace detail

double capacity(const Eigen::MatrixXcd& effective, double rho) {
  require_rho(rho);
  if (!effective.allFinite()) {
    throw DomainError("capacity: channel entries must be finite");
  }
  if (effective.size() == 0) return 0.0;
  std::vector<std::complex<double>> scratch;
  return detail::log2_det_gram(effective, rho, scratch);
}

double capacity_q_form(const OverallChannel& channel, const PortSelection& sel,
                       double rho) {
  require_rho(rho);
  const ArrayDims& d = channel.dims();
  sel.validate(d);
  if (static_cast<double>(d.rows()) * d.cols() > 1e7) {
    throw DimensionError("capacity_q_form: padded product exceeds 1e7 entries");
  }
  if (!channel.entries().allFinite()) {
    throw DomainError("capacity: channel entries must be finite");
  }
  const auto [x, y] = to_indicators(sel, d);
  // Q = diag(x) G diag(y), entrywise x_r g_rc y_c.
  const Eigen::MatrixXcd q =
      x.cast<std::complex<double>>().asDiagonal() * channel.entries() *
      y.cast<std::complex<double>>().asDiagonal();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(d.rows(), d.rows());
  b += rho * q * q.adjoint();
  const Eigen::LLT<Eigen::MatrixXcd> llt(b);
  if (llt.info() != Eigen::Success) {
    throw DomainError("capacity_q_form: factorization failed");
  }
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal().real();
  return std::max(0.0, 2.0 * diag.array().log().sum() / std::numbers::ln2);
}

double surrogate_u(const OverallChannel& channel, std::span<const double> x,
                   std::span<const double> y) {
  const ArrayDims& d = channel.dims();
  if (static_cast<int>(x.size()) != d.rows() ||
      static_cast<int>(y.size()) != d.cols()) {
    throw DimensionError("surrogate_u: weight vectors do not match the channel");
  }
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!std::all_of(x.begin(), x.end(), in_unit) ||
      !std::all_of(y.begin(), y.end(), in_unit)) {
    throw DomainError("surrogate_u: weights must lie in [0, 1]");
  }
  const Eigen::MatrixXcd& g = channel.entries();
  double total = 0.0;
  for (int r = 0; r < d.rows(); ++r) {
    for (int c = 0; c < d.cols(); ++c) {
      total += std::norm(g(r, c)) * std::min(x[r], y[c]);
    }
  }
  return total;
}

double capacity_upper_bound(double u_value, double rho) {
  if (!(u_value >= 0.0)) throw DomainError("upper bound: u must be >= 0");
  require_rho(rho);
  return rho / std::numbers::ln2 * u_value;
}

CapacityEvaluator::CapacityEvaluator(const OverallChannel& channel, double rho)
    : channel_(&channel), rho_(rho),
      effective_(channel.dims().m_r, channel.dims().m_t) {
  require_rho(rho);
  if (!channel.entries().allFinite()) {
    throw DomainError("capacity: channel entries must be finite");
  }
}

double CapacityEvaluator::operator()(std::span<const int> rx_ports,
                                     std::span<const int> tx_ports) {
  const ArrayDims& d = channel_->dims();
  const Eigen::MatrixXcd& g = channel_->entries();
  for (int i = 0; i < d.m_r; ++i) {
    const int row = i * d.n_r + rx_ports[i];
    for (int j = 0; j < d.m_t; ++j) {
      effective_(i, j) = g(row, j * d.n_t + tx_ports[j]);
    }
  }
  ++count_;
  return detail::log2_det_gram(effective_, rho_, gram_);
}

}  // namespace fluidmimo
