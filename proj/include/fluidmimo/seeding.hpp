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
#include <initializer_list>

namespace fluidmimo {

/// One SplitMix64 output step applied to `state`.
constexpr std::uint64_t splitmix64(std::uint64_t state) noexcept {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and a path of indices.
///
/// The rule is a fold: h = splitmix64(seed); for each part p,
/// h = splitmix64(splitmix64(h) + p). Distinct paths give unrelated
/// seeds, and appending new paths never changes existing ones.
constexpr std::uint64_t derive_seed(
    std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t p : path) h = splitmix64(splitmix64(h) + p);
  return h;
}

}  // namespace fluidmimo
