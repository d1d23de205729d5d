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

#include <filesystem>
#include <iosfwd>

#include "fluidmimo/channel.hpp"

namespace fluidmimo {

// Text format:
//
//   # m_r=2,m_t=2,n_r=10,n_t=10
//   i,n,j,k,re,im
//   1,1,1,1,0.123...,-1.5
//   ...
//
// Indices are 1-based. The first line declares the dimensions; it may be
// omitted, in which case they are inferred from the largest indices. Every
// entry must appear exactly once. Values use the shortest decimal form that
// reads back to the same double.

void save_channel(const OverallChannel& channel, std::ostream& out);
void save_channel(const OverallChannel& channel,
                  const std::filesystem::path& path);

/// Throws ParseError carrying the offending line number.
OverallChannel load_channel(std::istream& in);
OverallChannel load_channel(const std::filesystem::path& path);

}  // namespace fluidmimo
