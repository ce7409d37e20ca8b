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

#include "plateau/haar.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "plateau/errors.hpp"

namespace plateau {

RngStream make_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag)};
  return RngStream(seq);
}

Matrix haar_unitary(std::size_t dim, RngStream& rng) {
  if (dim < 2) throw DimensionError("Haar sampling needs dim >= 2");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix z(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) z(r, c) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto diag = r(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= mag > 0 ? diag / mag : std::complex<double>(1.0, 0.0);
  }
  return q;
}

double uniform_angle(RngStream& rng) {
  std::uniform_real_distribution<double> dist(0.0, 2 * std::numbers::pi);
  return dist(rng);
}

}  // namespace plateau
