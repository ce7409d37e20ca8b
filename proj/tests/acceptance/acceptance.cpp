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

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "plateau/design_engine.hpp"
#include "plateau/gradient.hpp"
#include "plateau/tpe.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace plateau;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Row {
  GateFamily family;
  double l1, linf, l2;
};

// Published two-design distances.
const Row kTable[] = {{GateFamily::Cartan, 0.25, 0.25, 0.17},
                      {GateFamily::RyCz, 1.76, 1.76, 1.00},
                      {GateFamily::NumberConserving, 2.40, 2.40, 1.00},
                      {GateFamily::XzZz, 0.95, 1.80, 0.87},
                      {GateFamily::U3Cnot, 0.68, 0.69, 0.42}};

std::vector<TpeReport> table_run(std::size_t samples) {
  const auto fams = all_families();
  return tpe_benchmark(fams, {samples, 20240601, 0, 1});
}

const TpeReport& find(const std::vector<TpeReport>& reports, GateFamily f) {
  for (const auto& r : reports)
    if (r.family == family_name(f)) return r;
  throw std::logic_error("missing family");
}

bool table_check(const std::vector<TpeReport>& reports, double tol, std::string& detail) {
  bool ok = true;
  for (const Row& row : kTable) {
    const TpeReport& r = find(reports, row.family);
    const bool good = std::abs(r.lambda1 - row.l1) <= tol && std::abs(r.lambdainf - row.linf) <= tol &&
                      std::abs(r.lambda2 - row.l2) <= tol;
    ok = ok && good;
    detail += fmt("%s %.3f/%.3f/%.3f%s; ", r.family.c_str(), r.lambda1, r.lambdainf, r.lambda2,
                  good ? "" : " (off)");
  }
  return ok;
}

void criteria_1_2() {
  const auto full = table_run(500000);
  std::string detail;
  bool ok = table_check(full, 0.05, detail);
  report(1, "published lambda norms at 500000 samples, +-0.05", ok, detail);

  const auto desk = table_run(100000);
  detail.clear();
  ok = table_check(desk, 0.1, detail);
  report(1, "published lambda norms at 100000 samples, +-0.1", ok, detail);

  const TpeReport& h = find(full, GateFamily::Haar4);
  auto within2 = [](double v, double ref) { return v >= ref / 2 && v <= ref * 2; };
  ok = within2(h.lambda1, 0.022) && within2(h.lambdainf, 0.022) && within2(h.lambda2, 0.0028);
  report(2, "Haar baseline at 500000 samples, factor 2", ok,
         fmt("haar4 %.4f/%.4f/%.5f vs 0.022/0.022/0.0028", h.lambda1, h.lambdainf, h.lambda2));
}

// Cone of the whole Hamiltonian: union over its strings.
std::vector<int> cone_blocks(const Hamiltonian& h, const AnsatzLayout& layout) {
  std::set<int> ids;
  for (const auto& t : h.terms()) {
    const auto c = causal_cone(t.string, layout);
    ids.insert(c.blocks.begin(), c.blocks.end());
  }
  return {ids.begin(), ids.end()};
}

void criterion_3() {
  const AnsatzLayout two(2, 1, {{1, 1, {0, 1}}});
  const auto zz = Hamiltonian::parse("1 ZZ");
  const DiffSpec diff{1, PauliString::parse("ZI")};
  const Rational exact = exact_variance<Rational>(zz, two, diff);
  const auto mc = mc_variance(two, GateFamily::Haar4, zz, diff, {10000, 3, Convention::Full, 1});
  const double z0 = (mc.variance - 32.0 / 75) / mc.std_error;
  bool ok = exact == Rational(32, 75) && std::abs(z0) < 3;
  std::string detail = "exact " + exact.str() + fmt(", mc %.4f +- %.4f (z %.2f); ", mc.variance,
                                                    mc.std_error, z0);

  int agree = 0;
  const int instances = 12;
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(i));
    const std::size_t n = 2 + static_cast<std::size_t>(i % 7);  // 2..8
    const int layers = 1 + i % 3;
    const auto layout = instances::random_layout(rng, n, layers, 2);
    const auto h = instances::random_hamiltonian(rng, n, 1 + static_cast<std::size_t>(i % 3));
    const auto cone = cone_blocks(h, layout);
    const Block& block = layout.block(cone[rng() % cone.size()]);
    const DiffSpec d{block.id, instances::random_generator(rng, block, n)};
    const double ex = exact_variance<double>(h, layout, d);
    const auto est = mc_variance(layout, GateFamily::Haar4, h, d,
                                 {2000, 5000 + static_cast<std::uint64_t>(i), Convention::Full, 1});
    const double z = est.std_error > 0 ? (est.variance - ex) / est.std_error : 0.0;
    worst = std::max(worst, std::abs(z));
    if (std::abs(z) < 3) ++agree;
  }
  ok = ok && agree == instances;
  detail += fmt("%d/%d random instances within 3 std errors (max |z| %.2f)", agree, instances, worst);
  report(3, "oracle equivalence", ok, detail);
}

Hamiltonian local_hamiltonian(std::mt19937_64& rng, std::size_t n, std::size_t terms) {
  std::set<std::string> seen;
  Hamiltonian h(n);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  while (h.terms().size() < terms) {
    std::string w(n, 'I');
    const std::size_t weight = 1 + rng() % std::min<std::size_t>(3, n);
    for (std::size_t k = 0; k < weight; ++k) w[rng() % n] = "XYZ"[rng() % 3];
    if (w.find_first_not_of('I') == std::string::npos || !seen.insert(w).second) continue;
    double c = 0.0;
    while (std::abs(c) < 0.05) c = coef(rng);
    h.add_term(c, PauliString::parse(w));
  }
  return h;
}

void criterion_4() {
  int violations = 0, checks = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(7000 + static_cast<std::uint64_t>(i));
    const std::size_t n = 2 + rng() % 9;
    const int layers = 1 + static_cast<int>(rng() % 4);
    const auto layout = instances::random_layout(rng, n, layers);
    const auto h = local_hamiltonian(rng, n, 1 + rng() % 3);
    for (const Block& b : layout.blocks()) {
      const DiffSpec d{b.id, first_qubit_z(b, n)};
      const double bound = theorem_bound<double>(h, layout, d);
      const double exact = exact_variance<double>(h, layout, d);
      ++checks;
      worst = std::max(worst, bound - exact);
      if (bound > exact + 1e-12) ++violations;
    }
  }
  report(4, "bound dominance", violations == 0,
         fmt("%d violations over %d blocks in 100 layouts (max bound - exact %.3e)", violations,
             checks, worst));
}

void criterion_5() {
  const auto layout = make_checkerboard(10, 5, Topology::Ring);
  const auto h = Hamiltonian::parse("1.0 IIIIIXIIII");
  const auto cone = causal_cone(h.terms()[0].string, layout);
  bool ok = true;
  std::size_t bound_bad = 0;
  for (const auto& e : variance_heatmap(h, layout, HeatmapMode::Bound))
    if ((e.value > 0.0) != cone.contains(e.block_id)) ++bound_bad;
  ok = ok && bound_bad == 0;

  std::string detail = fmt("cone %zu/25 blocks; bound mismatches %zu", cone.blocks.size(), bound_bad);
  for (GateFamily f : {GateFamily::Cartan, GateFamily::Haar4}) {
    const std::vector<Hamiltonian> hs = {h};
    const auto scan = mc_scan(layout, f, hs, {200, 55, Convention::Half, 1});
    std::map<int, double> block_var, block_max;
    for (std::size_t s = 0; s < scan.slots.size(); ++s) {
      block_var[scan.slots[s].block_id] += scan.estimates[0][s].variance;
      block_max[scan.slots[s].block_id] =
          std::max(block_max[scan.slots[s].block_id], scan.max_abs_derivative[0][s]);
    }
    std::size_t mismatches = 0;
    double off_max = 0.0;
    for (const auto& [id, var] : block_var) {
      const bool in = cone.contains(id);
      if (in && !(var > 0.0 && block_max[id] > 1e-10)) ++mismatches;
      if (!in) {
        off_max = std::max(off_max, block_max[id]);
        if (block_max[id] >= 1e-10) ++mismatches;
      }
    }
    ok = ok && mismatches == 0;
    detail += fmt("; %s mc mismatches %zu, off-cone max |d| %.1e",
                  std::string(family_name(f)).c_str(), mismatches, off_max);
  }
  report(5, "causal-cone structure", ok, detail);
}

void criterion_6() {
  const auto layout = make_checkerboard(10, 4, Topology::Ring);
  const auto h1 = Hamiltonian::parse("1 IIIIXXIIII");
  const auto h2 = Hamiltonian::parse("1 IIIIIXXIII");
  const std::vector<Hamiltonian> hs = {h1, h2, h1 + h2};
  const auto scan = mc_scan(layout, GateFamily::Cartan, hs, {400, 6, Convention::Half, 1});
  std::size_t active = 0, within = 0;
  for (std::size_t s = 0; s < scan.slots.size(); ++s) {
    const auto& a = scan.estimates[0][s];
    const auto& b = scan.estimates[1][s];
    const auto& ab = scan.estimates[2][s];
    if (std::max({a.variance, b.variance, ab.variance}) <= 1e-20) continue;
    ++active;
    const double diff = ab.variance - a.variance - b.variance;
    const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error +
                                ab.std_error * ab.std_error);
    if (std::abs(diff) <= 2 * se) ++within;
  }
  const double frac = active ? static_cast<double>(within) / static_cast<double>(active) : 0.0;
  report(6, "additivity", active > 0 && frac >= 0.95,
         fmt("%zu/%zu nontrivial parameters within 2 combined std errors (%.1f%%)", within, active,
             100 * frac));
}

void criterion_7() {
  std::vector<double> xs, ys;
  std::string detail;
  for (std::size_t n : {4, 6, 8, 10}) {
    const auto layout = make_checkerboard(n, 2, Topology::Ring);
    Hamiltonian h(n);
    h.add_term(1.0, PauliString::parse(std::string(n, 'X')));
    double mean = 0.0;
    for (const auto& e : variance_heatmap(h, layout, HeatmapMode::Exact)) mean += e.value;
    mean /= static_cast<double>(layout.blocks().size());
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log(mean));
    detail += fmt("n=%zu %.4e; ", n, mean);
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < ys.size(); ++k) decreasing = decreasing && ys[k] < ys[k - 1];
  const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  const double slope = sxy / sxx;
  report(7, "global-string decay", decreasing && slope < 0,
         detail + fmt("log-linear slope %.4f", slope));
}

void criterion_8() {
  const Matrix m = haar_moment_exact(4).values;
  const Matrix id16 = Matrix::Identity(16, 16);
  Eigen::VectorXcd vid(256);
  for (Eigen::Index r = 0; r < 16; ++r)
    for (Eigen::Index c = 0; c < 16; ++c) vid(r * 16 + c) = r == c ? 1.0 : 0.0;
  const Matrix pi1 = vid * vid.adjoint() / 16.0;
  const Matrix rhs = (32.0 / 15.0) * m * (Matrix::Identity(256, 256) - pi1);

  std::mt19937_64 rng(88);
  std::vector<std::string> words;
  for (const auto& w : oracle::all_words(2))
    if (w != "II") words.push_back(w);
  double worst = 0.0, worst_inputs = 0.0;
  for (int k = 0; k < 5; ++k) {
    const std::string fw = words[rng() % words.size()];
    const Matrix f = oracle::word_matrix(fw);
    const Matrix f1 = oracle::kron(f, Matrix::Identity(4, 4));
    const Matrix f2 = oracle::kron(Matrix::Identity(4, 4), f);
    const Matrix ff = f1 * f2;
    // X -> -(FF X - F1 X F2 - F2 X F1 + X FF): i[F, .] on both copies.
    const Matrix c = -(oracle::superop(ff, id16) - oracle::superop(f1, f2) -
                       oracle::superop(f2, f1) + oracle::superop(id16, ff));
    const Matrix lhs = m * c * m;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    for (const auto& hw : words) {
      const Matrix h = oracle::word_matrix(hw);
      const Matrix hh = oracle::kron(h, h);
      Eigen::VectorXcd v(256);
      for (Eigen::Index r = 0; r < 16; ++r)
        for (Eigen::Index cc = 0; cc < 16; ++cc) v(r * 16 + cc) = hh(r, cc);
      worst_inputs = std::max(worst_inputs, (lhs * v - (32.0 / 15.0) * (m * v)).cwiseAbs().maxCoeff());
    }
  }
  report(8, "commutator factor 32/15", worst < 1e-10 && worst_inputs < 1e-10,
         fmt("max entry error %.2e over 5 generators; on the 15 h(x)h inputs %.2e", worst,
             worst_inputs));
}

void criterion_9() {
  std::string detail;
  bool ok = true;

  // Mixer mass conservation and idempotence.
  std::mt19937_64 rng(99);
  double mass_err = 0.0, idem_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 9;
    SupportDistribution<double> d(n);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 8; ++k) d.add(rng() & ((QubitMask{1} << n) - 1), u(rng));
    const QubitMask y = (rng() & ((QubitMask{1} << n) - 1)) | (QubitMask{1} << (rng() % n));
    const auto once = apply_mixer(d, y);
    const auto twice = apply_mixer(once, y);
    mass_err = std::max(mass_err, std::abs(once.total() - d.total()) / d.total());
    for (const auto& [s, w] : once.weights()) idem_err = std::max(idem_err, std::abs(twice.at(s) - w) / w);
    if (twice.weights().size() != once.weights().size()) idem_err = 1.0;
  }
  ok = ok && mass_err <= 1e-12 && idem_err <= 1e-12;
  detail += fmt("mixer mass %.1e idem %.1e; ", mass_err, idem_err);

  // Anticommutant count.
  bool count_ok = true;
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto words = oracle::all_words(m);
    for (const auto& f : words) {
      const auto pf = PauliString::parse(f);
      if (pf.is_trivial()) continue;
      std::size_t anti = 0;
      for (const auto& w : words) anti += commutes(pf, PauliString::parse(w)) ? 0 : 1;
      count_ok = count_ok && anti == words.size() / 2;
    }
  }
  ok = ok && count_ok;
  detail += count_ok ? "anticommutants 4^m/2 ok; " : "anticommutant count wrong; ";

  // Parameter shift against finite differences.
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  double fd_err = 0.0;
  const GateFamily fams[] = {GateFamily::XzZz, GateFamily::U3Cnot, GateFamily::RyCz,
                             GateFamily::Cartan};
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + 2 * static_cast<std::size_t>(t % 3);
    const auto layout = make_checkerboard(n, 1 + t % 3, t % 2 ? Topology::Ring : Topology::Line);
    const GateFamily f = fams[t % 4];
    const auto h = instances::random_hamiltonian(rng, n, 1 + t % 3);
    std::vector<double> params(parameter_table(layout, f).size());
    for (double& p : params) p = angle(rng);
    const std::size_t idx = rng() % params.size();
    const double shift = param_shift_grad(layout, f, params, h, idx, Convention::Half);
    const double fd = oracle::central_difference(
        [&](double x) {
          auto p = params;
          p[idx] = x;
          return energy(layout, f, p, h);
        },
        params[idx]);
    fd_err = std::max(fd_err, std::abs(shift - fd));
  }
  ok = ok && fd_err < 1e-6;
  detail += fmt("shift vs fd %.1e; ", fd_err);

  // Exact Haar moment idempotence.
  const Matrix hm = haar_moment_exact(4).values;
  const double idem = (hm * hm - hm).cwiseAbs().maxCoeff();
  ok = ok && idem < 1e-10;
  detail += fmt("moment idempotence %.1e; ", idem);

  // Seed determinism across thread counts.
  const auto layout = make_checkerboard(6, 3, Topology::Ring);
  const std::vector<Hamiltonian> hs = {Hamiltonian::parse("1 IIXXII")};
  bool same = true;
  for (GateFamily f : {GateFamily::Cartan, GateFamily::Haar4}) {
    const auto a = mc_scan(layout, f, hs, {64, 12, Convention::Half, 1});
    const auto b = mc_scan(layout, f, hs, {64, 12, Convention::Half, 4});
    for (std::size_t s = 0; s < a.slots.size(); ++s)
      same = same && a.estimates[0][s].variance == b.estimates[0][s].variance &&
             a.estimates[0][s].std_error == b.estimates[0][s].std_error;
  }
  const auto ma = sampled_moment(GateFamily::XzZz, {5000, 4, 0, 1});
  const auto mb = sampled_moment(GateFamily::XzZz, {5000, 4, 0, 4});
  same = same && (ma.values - mb.values).cwiseAbs().maxCoeff() == 0.0;
  ok = ok && same;
  detail += same ? "thread-count determinism ok" : "thread-count determinism broken";
  report(9, "property suites", ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_3();
  criterion_4();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_5();
  criterion_6();
  criteria_1_2();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s: %d failing criteria (%.0f s)\n", failures ? "FAIL" : "PASS", failures, secs);
  return failures ? 1 : 0;
}
