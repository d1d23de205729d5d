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

#include "fluidmimo/config.hpp"

#include <cmath>
#include <sstream>

#include "fluidmimo/errors.hpp"

namespace fluidmimo {

std::string CapExceeded::message(double combinations, double cap,
                                 const std::string& context) {
  std::ostringstream os;
  os.precision(17);
  os << "exhaustive search needs " << combinations
     << " combinations, above the cap of " << cap;
  if (!context.empty()) os << " (" << context << ")";
  return os.str();
}

void ArrayDims::validate() const {
  if (m_r < 1) throw ConfigError("mr", "must be >= 1");
  if (m_t < 1) throw ConfigError("mt", "must be >= 1");
  if (n_r < 1) throw ConfigError("nr", "must be >= 1");
  if (n_t < 1) throw ConfigError("nt", "must be >= 1");
}

double ArrayDims::combinations() const {
  return std::pow(static_cast<double>(n_r), m_r) *
         std::pow(static_cast<double>(n_t), m_t);
}

void FluidMimoConfig::validate() const {
  dims.validate();
  if (!std::isfinite(snr_db)) throw ConfigError("snr-db", "must be finite");
  if (!std::isfinite(w) || w < 0.0) throw ConfigError("w", "must be >= 0");
}

double FluidMimoConfig::snr_linear() const {
  return std::pow(10.0, snr_db / 10.0);
}

double FluidMimoConfig::rho() const { return rho_from_snr_db(snr_db, dims.m_t); }

double rho_from_snr_db(double snr_db, int m_t) {
  return std::pow(10.0, snr_db / 10.0) / m_t;
}

}  // namespace fluidmimo
