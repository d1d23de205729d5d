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

/// Zero-order Bessel function of the first kind for x >= 0.
///
/// Rational approximation below x = 8, Hankel asymptotic form with
/// polynomial corrections above. Absolute error is below 1e-8 on [0, 8].
/// Throws DomainError for negative or non-finite input.
double bessel_j0(double x);

}  // namespace fluidmimo
