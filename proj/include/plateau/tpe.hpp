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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plateau/gates.hpp"
#include "plateau/haar.hpp"

namespace plateau {

/**
 * Two-fold moment operator of a distribution over d x d unitaries, as a
 * d^4 x d^4 matrix. It represents the channel X -> E[W^dag X W] with
 * W = U (x) U acting on d^2 x d^2 operators, vectorized row-major with
 * qubit 0 most significant. Equivalently it is the conjugate transpose of
 * E[U (x) U (x) U* (x) U*].
 */
struct MomentMatrix {
  std::size_t dim = 0;
  Matrix values;
  std::size_t sample_count = 0;  // 0 for exact matrices
};

/// X -> [(Tr X - Tr(SX)/d) 1 + (Tr(SX) - Tr X / d) S] / (d^2 - 1).
MomentMatrix haar_moment_exact(std::size_t dim);

/// Draws one d x d unitary from a stream.
using UnitarySampler = std::function<Matrix(RngStream&)>;

/// Uniform angles for parametric families, Haar for haar4.
UnitarySampler block_sampler(GateFamily family);

struct MomentOptions {
  std::size_t samples = 100000;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_tag = 0;
  std::size_t workers = 1;
};

/// Mean over samples; sample i uses make_stream(seed, i, stream_tag).
/// Chunk sums are merged pairwise in chunk order, so the result does not
/// depend on `workers`.
MomentMatrix sampled_moment(const UnitarySampler& sampler, std::size_t dim,
                            const MomentOptions& options);
MomentMatrix sampled_moment(GateFamily family, const MomentOptions& options);

/// E[U X U^dag] over the same streams as sampled_moment().
Matrix sampled_first_moment(const UnitarySampler& sampler, const Matrix& x,
                            const MomentOptions& options);

struct LambdaNorms {
  double lambda1 = 0.0;    // max absolute column sum
  double lambdainf = 0.0;  // max absolute row sum
  double lambda2 = 0.0;    // largest singular value
};

/// Largest singular value by power iteration on A^dag A (relative
/// tolerance 1e-8, at most 10^4 iterations). Throws NonConvergenceError.
double spectral_norm(const Matrix& a, double tol = 1e-8, std::size_t max_iter = 10000);
LambdaNorms lambda_norms(const Matrix& diff);
/// Sum of singular values.
double trace_norm(const Matrix& a);

struct TpeReport {
  std::string family;
  std::size_t sample_count = 0;
  double lambda1 = 0.0;
  double lambdainf = 0.0;
  double lambda2 = 0.0;
  std::uint64_t master_seed = 0;
  std::optional<double> trace_norm;

  /// lambda2 <= min(lambda1, lambdainf) up to rounding.
  bool ordered() const;
};

/// One report per family. Each family samples with its own stream tag
/// (enum value + 1), so reports do not depend on the family list.
std::vector<TpeReport> tpe_benchmark(std::span<const GateFamily> families,
                                     const MomentOptions& options, bool with_trace_norm = false);

}  // namespace plateau
