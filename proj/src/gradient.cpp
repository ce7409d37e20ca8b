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

#include "plateau/gradient.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "plateau/errors.hpp"
#include "plateau/haar.hpp"
#include "plateau/statevector.hpp"

namespace plateau {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

Matrix2 pauli_matrix(Pauli p) {
  Matrix2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Generator restricted to the block, block qubit order.
Matrix local_generator(const PauliString& f, const Block& block) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t q : block.qubits) {
    const Matrix2 p = pauli_matrix(f.at(q));
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * p;
    out = std::move(next);
  }
  return out;
}

struct Context {
  const AnsatzLayout* layout;
  GateFamily family;
  std::vector<const Hamiltonian*> hamiltonians;
  std::vector<DerivativeSlot> slots;
  std::vector<Matrix> generators;  // haar4: one per block
  Convention convention;
  std::uint64_t seed;
};

struct SampledCircuit {
  std::vector<std::vector<double>> params;  // parametric, per block
  std::vector<Matrix> before, after;        // haar4
  std::vector<double> theta;
};

SampledCircuit draw(const Context& ctx, std::size_t sample_index) {
  RngStream rng = make_stream(ctx.seed, sample_index);
  const auto& blocks = ctx.layout->blocks();
  SampledCircuit c;
  if (ctx.family == GateFamily::Haar4) {
    for (const Block& b : blocks) {
      const std::size_t dim = std::size_t{1} << b.qubits.size();
      c.before.push_back(haar_unitary(dim, rng));
      c.after.push_back(haar_unitary(dim, rng));
      c.theta.push_back(uniform_angle(rng));
    }
  } else {
    const std::size_t pc = param_count(ctx.family);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      std::vector<double> p(pc);
      for (double& a : p) a = uniform_angle(rng);
      c.params.push_back(std::move(p));
    }
  }
  return c;
}

Matrix block_matrix(const Context& ctx, const SampledCircuit& c, std::size_t k, int slot,
                    double shift) {
  if (ctx.family == GateFamily::Haar4) {
    const double t = c.theta[k] + (slot == 0 ? shift : 0.0);
    const Matrix& f = ctx.generators[k];
    const Matrix rot = std::cos(t) * Matrix::Identity(f.rows(), f.cols()) - cplx(0, std::sin(t)) * f;
    return c.after[k] * rot * c.before[k];
  }
  std::vector<double> p = c.params[k];
  if (slot >= 0) p[static_cast<std::size_t>(slot)] += shift;
  return block_unitary(ctx.family, p);
}

// Derivatives of one sample, out[h * slots + s].
void derive_sample(const Context& ctx, std::size_t sample_index, std::span<double> out) {
  const SampledCircuit c = draw(ctx, sample_index);
  const auto& blocks = ctx.layout->blocks();
  const std::size_t nb = blocks.size();
  std::vector<Matrix> unitaries(nb);
  for (std::size_t k = 0; k < nb; ++k) unitaries[k] = block_matrix(ctx, c, k, -1, 0.0);

  std::vector<StateVector> prefix;
  prefix.reserve(nb);
  StateVector psi(ctx.layout->n_qubits());
  for (std::size_t k = 0; k < nb; ++k) {
    prefix.push_back(psi);
    psi.apply(unitaries[k], blocks[k].qubits);
  }

  const double shift = ctx.family == GateFamily::Haar4 ? kPi / 4 : kPi / 2;
  const double scale = ctx.convention == Convention::Half ? 0.5 : 1.0;
  const std::size_t ns = ctx.slots.size();
  std::vector<double> plus(ctx.hamiltonians.size());
  for (std::size_t s = 0; s < ns; ++s) {
    const std::size_t k = ctx.layout->index_of(ctx.slots[s].block_id);
    for (int sign : {+1, -1}) {
      StateVector phi = prefix[k];
      phi.apply(block_matrix(ctx, c, k, ctx.slots[s].slot, sign * shift), blocks[k].qubits);
      for (std::size_t j = k + 1; j < nb; ++j) phi.apply(unitaries[j], blocks[j].qubits);
      for (std::size_t h = 0; h < ctx.hamiltonians.size(); ++h) {
        const double e = expectation(phi, *ctx.hamiltonians[h]);
        if (sign > 0)
          plus[h] = e;
        else
          out[h * ns + s] = scale * (plus[h] - e);
      }
    }
  }
}

Context make_context(const AnsatzLayout& layout, GateFamily family,
                     std::span<const Hamiltonian> hamiltonians, Convention convention,
                     std::uint64_t seed, const GeneratorChoice& generator) {
  require_valid(layout);
  if (layout.n_qubits() > kMaxStateQubits)
    throw DimensionError("state-vector simulation supports at most " +
                         std::to_string(kMaxStateQubits) + " qubits");
  Context ctx{&layout, family, {}, {}, {}, convention, seed};
  for (const Hamiltonian& h : hamiltonians) {
    if (h.n_qubits() != layout.n_qubits())
      throw DimensionError("Hamiltonian size does not match the layout");
    ctx.hamiltonians.push_back(&h);
  }
  if (family == GateFamily::Haar4) {
    const auto& blocks = layout.blocks();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const DiffSpec spec{blocks[k].id, generator(blocks[k], layout.n_qubits())};
      validate_diff(spec, layout);
      ctx.generators.push_back(local_generator(spec.generator, blocks[k]));
      ctx.slots.push_back({k, blocks[k].id, blocks[k].layer, 0});
    }
  } else {
    for (const Block& b : layout.blocks())
      if (b.qubits.size() != 2)
        throw ConfigError("family " + std::string(family_name(family)) +
                          " requires two-qubit blocks");
    for (const ParamInfo& p : parameter_table(layout, family))
      if (slot_is_shiftable(family, p.slot)) ctx.slots.push_back({p.index, p.block_id, p.layer, p.slot});
    if (ctx.slots.empty())
      throw ConfigError("family " + std::string(family_name(family)) +
                        " has no parameter-shift slots");
  }
  return ctx;
}

ScanResult run(const Context& ctx, const McOptions& options) {
  if (options.samples < 2) throw ConfigError("at least 2 samples are required");
  const std::size_t n = options.samples;
  const std::size_t nh = ctx.hamiltonians.size();
  const std::size_t ns = ctx.slots.size();
  const std::size_t stride = nh * ns;
  std::vector<double> values(n * stride);

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, n));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t lo = n * w / workers;
          const std::size_t hi = n * (w + 1) / workers;
          for (std::size_t i = lo; i < hi; ++i)
            derive_sample(ctx, i, std::span<double>(values).subspan(i * stride, stride));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScanResult result;
  result.slots = ctx.slots;
  result.estimates.assign(nh, std::vector<VarianceEstimate>(ns));
  result.max_abs_derivative.assign(nh, std::vector<double>(ns, 0.0));
  const double count = static_cast<double>(n);
  for (std::size_t h = 0; h < nh; ++h) {
    for (std::size_t s = 0; s < ns; ++s) {
      const std::size_t col = h * ns + s;
      Kahan first, second;
      double max_abs = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i * stride + col];
        first.add(d);
        second.add(d * d);
        max_abs = std::max(max_abs, std::abs(d));
      }
      const double m2 = second.sum / count;
      Kahan spread;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i * stride + col];
        spread.add((d * d - m2) * (d * d - m2));
      }
      VarianceEstimate& est = result.estimates[h][s];
      est.mean = first.sum / count;
      est.variance = m2;
      est.std_error = std::sqrt(spread.sum / (count - 1.0) / count);
      est.sample_count = n;
      est.seed = options.master_seed;
      result.max_abs_derivative[h][s] = max_abs;
    }
  }
  return result;
}

}  // namespace

std::string_view convention_name(Convention c) {
  return c == Convention::Half ? "half" : "full";
}

Convention parse_convention(std::string_view name) {
  if (name == "half") return Convention::Half;
  if (name == "full") return Convention::Full;
  throw ConfigError("unknown derivative convention '" + std::string(name) +
                    "' (expected half or full)");
}

double energy(const AnsatzLayout& layout, GateFamily family, std::span<const double> params,
              const Hamiltonian& h) {
  if (h.n_qubits() != layout.n_qubits())
    throw DimensionError("Hamiltonian size does not match the layout");
  if (layout.n_qubits() > kMaxStateQubits)
    throw DimensionError("state-vector simulation supports at most " +
                         std::to_string(kMaxStateQubits) + " qubits");
  StateVector psi(layout.n_qubits());
  for (const PlacedGate& g : build_circuit(layout, family, params)) psi.apply(g.matrix, g.qubits);
  return expectation(psi, h);
}

double param_shift_grad(const AnsatzLayout& layout, GateFamily family,
                        std::span<const double> params, const Hamiltonian& h,
                        std::size_t param_index, Convention convention) {
  const auto table = parameter_table(layout, family);
  if (params.size() != table.size())
    throw DimensionError("expected " + std::to_string(table.size()) + " parameters, got " +
                         std::to_string(params.size()));
  if (param_index >= table.size())
    throw DimensionError("parameter index " + std::to_string(param_index) + " out of range");
  if (!slot_is_shiftable(family, table[param_index].slot))
    throw ConfigError("parameter " + std::to_string(param_index) +
                      " is not a Pauli rotation; the shift rule does not apply");
  std::vector<double> shifted(params.begin(), params.end());
  shifted[param_index] = params[param_index] + kPi / 2;
  const double plus = energy(layout, family, shifted, h);
  shifted[param_index] = params[param_index] - kPi / 2;
  const double minus = energy(layout, family, shifted, h);
  return convention == Convention::Half ? 0.5 * (plus - minus) : plus - minus;
}

ScanResult mc_scan(const AnsatzLayout& layout, GateFamily family,
                   std::span<const Hamiltonian> hamiltonians, const McOptions& options,
                   const GeneratorChoice& generator) {
  if (hamiltonians.empty()) throw ConfigError("no Hamiltonians to scan");
  const Context ctx =
      make_context(layout, family, hamiltonians, options.convention, options.master_seed, generator);
  return run(ctx, options);
}

VarianceEstimate mc_variance(const AnsatzLayout& layout, GateFamily family, const Hamiltonian& h,
                             const DiffTarget& target, const McOptions& options) {
  std::span<const Hamiltonian> hs(&h, 1);
  if (const auto* spec = std::get_if<DiffSpec>(&target)) {
    if (family != GateFamily::Haar4)
      throw ConfigError("a block/generator target requires the haar4 family");
    validate_diff(*spec, layout);
    const PauliString f = spec->generator;
    const int id = spec->block_id;
    const GeneratorChoice choice = [&](const Block& b, std::size_t n) {
      return b.id == id ? f : first_qubit_z(b, n);
    };
    Context ctx = make_context(layout, family, hs, options.convention, options.master_seed, choice);
    ctx.slots = {ctx.slots[layout.index_of(id)]};
    return run(ctx, options).estimates[0][0];
  }
  if (family == GateFamily::Haar4)
    throw ConfigError("haar4 takes a block/generator target, not a parameter index");
  const std::size_t index = std::get<ParamTarget>(target).param_index;
  Context ctx =
      make_context(layout, family, hs, options.convention, options.master_seed, first_qubit_z);
  std::optional<DerivativeSlot> chosen;
  for (const DerivativeSlot& s : ctx.slots)
    if (s.index == index) chosen = s;
  if (!chosen)
    throw ConfigError("parameter " + std::to_string(index) +
                      " is out of range or not a Pauli rotation");
  ctx.slots = {*chosen};
  return run(ctx, options).estimates[0][0];
}

std::vector<double> sample_parameters(const AnsatzLayout& layout, GateFamily family,
                                      std::uint64_t master_seed, std::size_t sample_index) {
  if (family == GateFamily::Haar4) throw ConfigError("haar4 has no angles");
  Context ctx{&layout, family, {}, {}, {}, Convention::Half, master_seed};
  std::vector<double> flat;
  for (const auto& p : draw(ctx, sample_index).params) flat.insert(flat.end(), p.begin(), p.end());
  return flat;
}

std::vector<double> sample_derivatives(const AnsatzLayout& layout, GateFamily family,
                                       const Hamiltonian& h, std::uint64_t master_seed,
                                       std::size_t sample_index, Convention convention,
                                       const GeneratorChoice& generator) {
  const Context ctx = make_context(layout, family, std::span<const Hamiltonian>(&h, 1), convention,
                                   master_seed, generator);
  std::vector<double> out(ctx.slots.size());
  derive_sample(ctx, sample_index, out);
  return out;
}

}  // namespace plateau
