// Copyright 2026 The plateau-scope Authors
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
#include <cstdint>
#include <random>

#include "plateau/gates.hpp"

namespace plateau {

using RngStream = std::mt19937_64;

/// Independent generator for (master_seed, index). `tag` separates unrelated
/// consumers that share a seed.
RngStream make_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t tag = 0);

/// Haar-distributed dim x dim unitary: QR of a complex Ginibre matrix with
/// the phases of R's diagonal absorbed into Q.
Matrix haar_unitary(std::size_t dim, RngStream& rng);

/// Uniform angle in [0, 2 pi).
double uniform_angle(RngStream& rng);

}  // namespace plateau
