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

namespace fluidmimo {

/// Antenna and port counts of a fluid-MIMO link.
///
/// The overall channel has `rows() = m_r * n_r` rows (receive ports, grouped
/// per receive antenna) and `cols() = m_t * n_t` columns (transmit ports,
/// grouped per transmit antenna).
struct ArrayDims {
  int m_r = 1;  ///< receive fluid antennas
  int m_t = 1;  ///< transmit fluid antennas
  int n_r = 1;  ///< ports per receive antenna
  int n_t = 1;  ///< ports per transmit antenna

  int rows() const noexcept { return m_r * n_r; }
  int cols() const noexcept { return m_t * n_t; }

  /// Throws ConfigError naming the first field that is < 1.
  void validate() const;

  /// (n_r)^(m_r) * (n_t)^(m_t), the number of feasible port selections.
  /// Returned as a double so that huge configurations do not wrap.
  double combinations() const;

  friend bool operator==(const ArrayDims&, const ArrayDims&) = default;
};

/// Independent variables of one experiment point.
///
/// Defaults follow the reference setup: 2x2 antennas, 10 ports each,
/// 5 dB average SNR and an aperture of half a wavelength.
struct FluidMimoConfig {
  ArrayDims dims{2, 2, 10, 10};
  double snr_db = 5.0;  ///< average SNR per receive antenna, dB
  double w = 0.5;       ///< aperture length in wavelengths

  void validate() const;

  double snr_linear() const;

  /// Per-transmit-antenna SNR factor: linear SNR divided by m_t.
  double rho() const;
};

/// rho for a given average SNR (dB) and transmit antenna count.
double rho_from_snr_db(double snr_db, int m_t);

}  // namespace fluidmimo
