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

#include "plateau/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include <Eigen/SVD>

#include "plateau/errors.hpp"

namespace plateau {

namespace {

constexpr std::size_t kChunk = 1024;

// Pairwise merge of chunk sums, fed in chunk order.
class PairwiseSum {
 public:
  void push(Matrix m) {
    std::size_t level = 0;
    while (!stack_.empty() && stack_.back().first == level) {
      m = stack_.back().second + m;
      stack_.pop_back();
      ++level;
    }
    stack_.emplace_back(level, std::move(m));
  }

  Matrix total() const {
    Matrix out = stack_.back().second;
    for (auto it = std::next(stack_.rbegin()); it != stack_.rend(); ++it) out = it->second + out;
    return out;
  }

 private:
  std::vector<std::pair<std::size_t, Matrix>> stack_;
};

// Row-major vec(U (x) U).
Eigen::VectorXcd two_copy_vec(const Matrix& u) {
  const Eigen::Index d = u.rows();
  const Eigen::Index d2 = d * d;
  Eigen::VectorXcd w(d2 * d2);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index e = 0; e < d; ++e)
          w((a * d + b) * d2 + c * d + e) = u(a, c) * u(b, e);
  return w;
}

// Lower triangle of sum_i w_i w_i^dag over one chunk.
Matrix chunk_gram(const UnitarySampler& sampler, std::size_t dim, const MomentOptions& o,
                  std::size_t first, std::size_t count) {
  const Eigen::Index len = static_cast<Eigen::Index>(dim * dim * dim * dim);
  Matrix a(len, static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    RngStream rng = make_stream(o.master_seed, first + i, o.stream_tag);
    const Matrix u = sampler(rng);
    if (static_cast<std::size_t>(u.rows()) != dim || u.rows() != u.cols())
      throw DimensionError("sampler returned a unitary of the wrong size");
    a.col(static_cast<Eigen::Index>(i)) = two_copy_vec(u);
  }
  Matrix g = Matrix::Zero(len, len);
  g.selfadjointView<Eigen::Lower>().rankUpdate(a);
  return g;
}

}  // namespace

MomentMatrix haar_moment_exact(std::size_t dim) {
  if (dim < 2) throw DimensionError("dimension must be at least 2");
  const std::size_t d2 = dim * dim;
  const double d = static_cast<double>(dim);
  const double norm = d * d - 1.0;
  // S on C^d (x) C^d: S[(a,b),(c,e)] = [a == e][b == c].
  auto swap_entry = [dim](std::size_t r, std::size_t c) {
    return (r / dim == c % dim && r % dim == c / dim) ? 1.0 : 0.0;
  };
  Matrix k = Matrix::Zero(static_cast<Eigen::Index>(d2 * d2), static_cast<Eigen::Index>(d2 * d2));
  // Column (i, j) is the image of the matrix unit E_ij.
  for (std::size_t i = 0; i < d2; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      const double tr = i == j ? 1.0 : 0.0;
      const double tr_s = swap_entry(j, i);
      const double c_id = (tr - tr_s / d) / norm;
      const double c_swap = (tr_s - tr / d) / norm;
      if (c_id == 0.0 && c_swap == 0.0) continue;
      const auto col = static_cast<Eigen::Index>(i * d2 + j);
      for (std::size_t r = 0; r < d2; ++r)
        for (std::size_t c = 0; c < d2; ++c) {
          const double v = (r == c ? c_id : 0.0) + c_swap * swap_entry(r, c);
          if (v != 0.0) k(static_cast<Eigen::Index>(r * d2 + c), col) = v;
        }
    }
  }
  return {dim, std::move(k), 0};
}

UnitarySampler block_sampler(GateFamily family) {
  if (family == GateFamily::Haar4) return [](RngStream& rng) { return haar_unitary(4, rng); };
  return [family](RngStream& rng) {
    std::vector<double> p(param_count(family));
    for (double& a : p) a = uniform_angle(rng);
    return Matrix(block_unitary(family, p));
  };
}

MomentMatrix sampled_moment(const UnitarySampler& sampler, std::size_t dim,
                            const MomentOptions& options) {
  if (options.samples < 1) throw ConfigError("at least 1 sample is required");
  if (dim < 2 || dim > 4) throw DimensionError("moment dimension must be 2, 3 or 4");
  const std::size_t n = options.samples;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  const std::size_t batch = 2 * workers;

  PairwiseSum sum;
  for (std::size_t first = 0; first < chunks; first += batch) {
    const std::size_t count = std::min(batch, chunks - first);
    std::vector<Matrix> parts(count);
    std::vector<std::exception_ptr> errors(count);
    auto work = [&](std::size_t w) {
      for (std::size_t j = w; j < count; j += workers) {
        try {
          const std::size_t c = first + j;
          const std::size_t lo = c * kChunk;
          parts[j] = chunk_gram(sampler, dim, options, lo, std::min(kChunk, n - lo));
        } catch (...) {
          errors[j] = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (Matrix& p : parts) sum.push(std::move(p));
  }

  const Matrix lower = sum.total() / static_cast<double>(n);
  const Matrix r = lower.selfadjointView<Eigen::Lower>();
  // r[(a,b),(c,e)] = E[W_ab conj(W_ce)]; reorder into the Heisenberg channel.
  const std::size_t d2 = dim * dim;
  Matrix k(r.rows(), r.cols());
  for (std::size_t a = 0; a < d2; ++a)
    for (std::size_t c = 0; c < d2; ++c)
      for (std::size_t b = 0; b < d2; ++b)
        for (std::size_t e = 0; e < d2; ++e)
          k(static_cast<Eigen::Index>(a * d2 + c), static_cast<Eigen::Index>(b * d2 + e)) =
              r(static_cast<Eigen::Index>(e * d2 + c), static_cast<Eigen::Index>(b * d2 + a));
  return {dim, std::move(k), n};
}

MomentMatrix sampled_moment(GateFamily family, const MomentOptions& options) {
  return sampled_moment(block_sampler(family), 4, options);
}

Matrix sampled_first_moment(const UnitarySampler& sampler, const Matrix& x,
                            const MomentOptions& options) {
  if (options.samples < 1) throw ConfigError("at least 1 sample is required");
  if (x.rows() != x.cols()) throw DimensionError("operator must be square");
  PairwiseSum sum;
  for (std::size_t lo = 0; lo < options.samples; lo += kChunk) {
    Matrix part = Matrix::Zero(x.rows(), x.cols());
    for (std::size_t i = lo; i < std::min(options.samples, lo + kChunk); ++i) {
      RngStream rng = make_stream(options.master_seed, i, options.stream_tag);
      const Matrix u = sampler(rng);
      if (u.rows() != x.rows()) throw DimensionError("operator and unitary sizes differ");
      part += u * x * u.adjoint();
    }
    sum.push(std::move(part));
  }
  return sum.total() / static_cast<double>(options.samples);
}

double spectral_norm(const Matrix& a, double tol, std::size_t max_iter) {
  if (a.size() == 0) return 0.0;
  const Matrix g = a.adjoint() * a;
  if (g.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  RngStream rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(g.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {normal(rng), normal(rng)};
  v.normalize();
  double previous = -1.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Eigen::VectorXcd y = g * v;
    const double lambda = v.dot(y).real();
    const double len = y.norm();
    if (len == 0.0) return 0.0;
    v = y / len;
    if (previous >= 0.0 && std::abs(lambda - previous) <= tol * std::abs(lambda))
      return std::sqrt(std::max(lambda, 0.0));
    previous = lambda;
  }
  throw NonConvergenceError("power iteration did not converge in " + std::to_string(max_iter) +
                            " iterations");
}

LambdaNorms lambda_norms(const Matrix& diff) {
  if (diff.rows() != diff.cols()) throw DimensionError("lambda norms need a square matrix");
  LambdaNorms out;
  if (diff.size() == 0) return out;
  const Eigen::MatrixXd mag = diff.cwiseAbs();
  out.lambda1 = mag.colwise().sum().maxCoeff();
  out.lambdainf = mag.rowwise().sum().maxCoeff();
  out.lambda2 = spectral_norm(diff);
  return out;
}

double trace_norm(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

bool TpeReport::ordered() const {
  const double slack = 1e-9 * std::max(1.0, lambda2);
  return lambda2 <= lambda1 + slack && lambda2 <= lambdainf + slack;
}

std::vector<TpeReport> tpe_benchmark(std::span<const GateFamily> families,
                                     const MomentOptions& options, bool with_trace_norm) {
  if (options.samples < 1000) throw ConfigError("TPE benchmarking needs at least 1000 samples");
  const MomentMatrix exact = haar_moment_exact(4);
  std::vector<TpeReport> reports;
  for (GateFamily f : families) {
    MomentOptions o = options;
    o.stream_tag = static_cast<std::uint64_t>(f) + 1;
    const Matrix diff = exact.values - sampled_moment(f, o).values;
    const LambdaNorms l = lambda_norms(diff);
    TpeReport r{std::string(family_name(f)), options.samples, l.lambda1, l.lambdainf, l.lambda2,
                options.master_seed, std::nullopt};
    if (with_trace_norm) r.trace_norm = trace_norm(diff);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace plateau
