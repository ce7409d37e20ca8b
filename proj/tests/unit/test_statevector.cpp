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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "plateau/errors.hpp"
#include "plateau/gates.hpp"
#include "plateau/haar.hpp"
#include "plateau/statevector.hpp"
#include "support/oracles.hpp"

using namespace plateau;

namespace {

using cplx = std::complex<double>;

Eigen::VectorXcd dense(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.amplitudes().size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = s.amplitudes()[static_cast<std::size_t>(i)];
  return v;
}

oracle::Dense pauli_exp(const std::string& word, double t) {
  const oracle::Dense p = oracle::word_matrix(word);
  return std::cos(t / 2) * oracle::Dense::Identity(p.rows(), p.cols()) -
         cplx(0, std::sin(t / 2)) * p;
}

}  // namespace

TEST_CASE("rotations use exp(-i t P / 2)") {
  const double t = 0.731;
  CHECK((Matrix(rotation(GateKind::RX, t)) - pauli_exp("X", t)).norm() < 1e-14);
  CHECK((Matrix(rotation(GateKind::RY, t)) - pauli_exp("Y", t)).norm() < 1e-14);
  CHECK((Matrix(rotation(GateKind::RZ, t)) - pauli_exp("Z", t)).norm() < 1e-14);
  const double a[] = {t};
  CHECK((Matrix(two_qubit_gate(GateKind::RXX, a)) - pauli_exp("XX", t)).norm() < 1e-14);
  CHECK((Matrix(two_qubit_gate(GateKind::RYY, a)) - pauli_exp("YY", t)).norm() < 1e-14);
  CHECK((Matrix(two_qubit_gate(GateKind::RZZ, a)) - pauli_exp("ZZ", t)).norm() < 1e-14);
}

TEST_CASE("fixed two-qubit gates") {
  const Matrix4 cnot = two_qubit_gate(GateKind::CNOT, {});
  CHECK(cnot(3, 2) == cplx(1));
  CHECK(cnot(2, 3) == cplx(1));
  CHECK(cnot(0, 0) == cplx(1));
  const Matrix4 cz = two_qubit_gate(GateKind::CZ, {});
  CHECK(cz(3, 3) == cplx(-1));
  CHECK((cz * cz - Matrix4::Identity()).norm() == 0.0);
}

TEST_CASE("number-conserving block") {
  const double a[] = {0.4, 1.3};
  const Matrix4 m = two_qubit_gate(GateKind::NumberConserving, a);
  CHECK(m(0, 0) == cplx(1));
  CHECK(m(3, 3) == cplx(1));
  CHECK(m(1, 1) == cplx(std::cos(0.4)));
  CHECK(m(2, 2) == cplx(-std::cos(0.4)));
  CHECK(std::abs(m(1, 2) - std::polar(std::sin(0.4), 1.3)) < 1e-15);
  CHECK(std::abs(m(2, 1) - std::polar(std::sin(0.4), -1.3)) < 1e-15);
  CHECK(is_unitary(Matrix(m)));
}

TEST_CASE("U3 applies R_Z(l) first") {
  const auto& gates = block_template(GateFamily::U3Cnot);
  REQUIRE(gates.size() >= 3);
  CHECK(gates[0].kind == GateKind::RZ);
  CHECK(gates[1].kind == GateKind::RY);
  CHECK(gates[2].kind == GateKind::RZ);
  std::vector<double> p(12, 0.0);
  p[0] = 0.3;  // lambda
  p[1] = 0.9;  // theta
  p[2] = 1.7;  // phi
  Matrix4 expected = Matrix4::Identity();
  for (int k = 0; k < 3; ++k) expected = embed_gate(gates[static_cast<std::size_t>(k)], p) * expected;
  const Matrix u3 = pauli_exp("Z", 1.7) * pauli_exp("Y", 0.9) * pauli_exp("Z", 0.3);
  CHECK((Matrix(expected) - oracle::kron(u3, oracle::Dense::Identity(2, 2))).norm() < 1e-13);
}

TEST_CASE("every family gives unitary blocks") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (auto f : all_families()) {
    if (f == GateFamily::Haar4) continue;
    std::vector<double> p(param_count(f));
    for (double& x : p) x = angle(rng);
    CHECK(is_unitary(Matrix(block_unitary(f, p))));
  }
}

TEST_CASE("state updates match dense Kronecker products") {
  auto stream = make_stream(17, 0);
  StateVector s(3);
  Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(8);
  ref(0) = 1;
  const std::size_t pairs[][2] = {{0, 1}, {2, 0}, {1, 2}, {2, 1}};
  for (const auto& pr : pairs) {
    const Matrix u = haar_unitary(4, stream);
    apply_two_qubit(s, u, pr[0], pr[1]);
    // Dense: permute so the target pair comes first, apply u (x) 1, permute back.
    oracle::Dense full = oracle::Dense::Zero(8, 8);
    for (std::size_t col = 0; col < 8; ++col) {
      auto bit = [&](std::size_t i, std::size_t q) { return (i >> (2 - q)) & 1; };
      const std::size_t local_in = bit(col, pr[0]) * 2 + bit(col, pr[1]);
      for (std::size_t local_out = 0; local_out < 4; ++local_out) {
        std::size_t row = col;
        row &= ~((std::size_t{1} << (2 - pr[0])) | (std::size_t{1} << (2 - pr[1])));
        row |= ((local_out >> 1) & 1) << (2 - pr[0]);
        row |= (local_out & 1) << (2 - pr[1]);
        full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            u(static_cast<Eigen::Index>(local_out), static_cast<Eigen::Index>(local_in));
      }
    }
    ref = full * ref;
    CHECK((dense(s) - ref).norm() < 1e-12);
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(apply_two_qubit(s, Matrix4::Identity(), 0, 0), DimensionError);
  CHECK_THROWS_AS(apply_two_qubit(s, Matrix4::Identity(), 0, 3), DimensionError);
  CHECK_THROWS(apply_two_qubit(s, 2.0 * Matrix4::Identity(), 0, 1));
  CHECK_THROWS_AS(StateVector(kMaxStateQubits + 1), DimensionError);
}

TEST_CASE("Pauli expectations match dense sandwiches") {
  auto stream = make_stream(99, 1);
  StateVector s(3);
  for (auto pr : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {0, 2}})
    apply_two_qubit(s, haar_unitary(4, stream), pr.first, pr.second);
  const Eigen::VectorXcd v = dense(s);
  for (const auto& w : oracle::all_words(3)) {
    const cplx expected = v.dot(oracle::word_matrix(w) * v);
    CHECK(std::abs(pauli_expectation(s, PauliString::parse(w)) - expected) < 1e-12);
  }
  const auto h = Hamiltonian::parse("0.5 XYZ\n-1.5 ZZI\n2 IIX\n");
  const double expected =
      (v.dot((0.5 * oracle::word_matrix("XYZ") - 1.5 * oracle::word_matrix("ZZI") +
              2.0 * oracle::word_matrix("IIX")) *
             v))
          .real();
  CHECK(expectation(s, h) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Haar samples are unitary and reproducible") {
  auto a = make_stream(7, 3);
  auto b = make_stream(7, 3);
  auto c = make_stream(7, 4);
  const Matrix ua = haar_unitary(4, a);
  CHECK(is_unitary(ua));
  CHECK((ua - haar_unitary(4, b)).norm() == 0.0);
  CHECK((ua - haar_unitary(4, c)).norm() > 0.1);
}

TEST_CASE("small gate examples") {
  Matrix4 swap = Matrix4::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  StateVector s(2);
  s.amplitudes()[0] = 0;
  s.amplitudes()[1] = 1;  // |01>
  apply_two_qubit(s, Matrix4(Matrix4::Identity()), 0, 1);
  CHECK(s.amplitudes()[1] == cplx(1));
  apply_two_qubit(s, swap, 0, 1);
  CHECK(s.amplitudes()[2] == cplx(1));
  apply_two_qubit(s, Matrix4(two_qubit_gate(GateKind::CNOT, {})), 0, 1);  // |11>
  apply_two_qubit(s, Matrix4(two_qubit_gate(GateKind::CZ, {})), 0, 1);
  CHECK(s.amplitudes()[3] == cplx(-1));
}

TEST_CASE("expectation examples") {
  StateVector zero(3);
  CHECK(expectation(zero, Hamiltonian::parse("1 ZII")) == 1.0);
  CHECK(expectation(zero, Hamiltonian::parse("1 XII")) == 0.0);
  StateVector bell(2);
  const double r = 1 / std::sqrt(2.0);
  bell.amplitudes()[0] = r;
  bell.amplitudes()[3] = r;
  CHECK(expectation(bell, Hamiltonian::parse("1 ZZ")) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(expectation(bell, Hamiltonian::parse("1 ZZZ")));
}

TEST_CASE("Haar first moments") {
  Matrix acc2 = Matrix::Zero(2, 2);
  double u00 = 0.0;
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  for (std::size_t i = 0; i < 100000; ++i) {
    auto rng = make_stream(123, i);
    const Matrix u = haar_unitary(2, rng);
    acc2 += u.adjoint() * p0 * u;
    u00 += std::norm(haar_unitary(4, rng)(0, 0));
  }
  acc2 /= 100000.0;
  CHECK((acc2 - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 5e-3);
  CHECK(std::abs(u00 / 100000.0 - 0.25) < 5e-3);
}

TEST_CASE("circuit construction examples") {
  const std::vector<double> zeros(15, 0.0);
  const Matrix4 cartan = block_unitary(GateFamily::Cartan, zeros);
  CHECK((cartan - cartan(0, 0) * Matrix4::Identity()).norm() < 1e-14);
  const double nc[] = {0.0, 2.2};
  const Matrix4 m = block_unitary(GateFamily::NumberConserving, nc);
  Matrix4 expected = Matrix4::Identity();
  expected(2, 2) = -1;
  CHECK((m - expected).norm() < 1e-15);
  const AnsatzLayout one(2, 1, {{1, 1, {0, 1}}});
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  const auto gates = build_circuit(one, GateFamily::RyCz, p);
  std::vector<GateKind> kinds;
  for (const auto& g : gates) kinds.push_back(g.kind);
  CHECK(kinds == std::vector<GateKind>{GateKind::RY, GateKind::RY, GateKind::CZ, GateKind::RY,
                                       GateKind::RY});
  CHECK_THROWS(build_circuit(one, GateFamily::RyCz, std::vector<double>(3, 0.0)));
  const auto ring = make_checkerboard(6, 3, Topology::Ring);
  const auto all = build_circuit(ring, GateFamily::XzZz,
                                 std::vector<double>(parameter_table(ring, GateFamily::XzZz).size()));
  for (std::size_t k = 1; k < all.size(); ++k) CHECK(all[k - 1].layer <= all[k].layer);
}
