// Copyright 2026 The SQKC Authors
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

#include <cstddef>

namespace sqkc::tol {

/// Exact-algebra tolerance (norms, unitarity, equal expectations).
inline constexpr double kExact = 1e-10;

/// Normalization slack accepted on user-supplied weights.
inline constexpr double kWeights = 1e-10;

/// Largest register the dense simulator will allocate.
inline constexpr std::size_t kMaxQubits = 24;

/// Default resolution of the likelihood grid search.
inline constexpr std::size_t kDefaultGridPoints = 10000;

/// Golden-section stopping width on theta.
inline constexpr double kGoldenTol = 1e-10;

/// Estimation errors at or below this are round-off and reported as 0.
inline constexpr double kZeroError = 1e-12;

} // namespace sqkc::tol
