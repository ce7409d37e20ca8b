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

#include "plateau/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

#include "plateau/errors.hpp"

namespace plateau {

namespace {

// Sitewise product table: kProduct[a][b] = (power of i, letter) for a*b.
struct SiteProduct {
  std::uint8_t power;
  Pauli letter;
};

constexpr SiteProduct kProduct[4][4] = {
    {{0, Pauli::I}, {0, Pauli::X}, {0, Pauli::Y}, {0, Pauli::Z}},
    {{0, Pauli::X}, {0, Pauli::I}, {1, Pauli::Z}, {3, Pauli::Y}},
    {{0, Pauli::Y}, {3, Pauli::Z}, {0, Pauli::I}, {1, Pauli::X}},
    {{0, Pauli::Z}, {1, Pauli::Y}, {3, Pauli::X}, {0, Pauli::I}},
};

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("Pauli strings act on " + std::to_string(a.n_qubits()) +
                         " and " + std::to_string(b.n_qubits()) + " qubits");
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

char pauli_char(Pauli p) {
  constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliString::PauliString(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw DimensionError("Pauli string needs at least one qubit");
}

PauliString::PauliString(std::size_t n_qubits,
                         const std::map<std::size_t, Pauli>& letters)
    : PauliString(n_qubits) {
  for (const auto& [q, p] : letters) {
    if (q >= n_qubits) {
      throw DimensionError("qubit index " + std::to_string(q) +
                           " out of range for " + std::to_string(n_qubits) +
                           " qubits");
    }
    if (p != Pauli::I) letters_.emplace(q, p);
  }
}

PauliString PauliString::parse(std::string_view word) {
  word = trim(word);
  if (word.empty()) throw ConfigError("empty Pauli word");
  std::map<std::size_t, Pauli> letters;
  for (std::size_t q = 0; q < word.size(); ++q) {
    switch (word[q]) {
      case 'I': break;
      case 'X': letters[q] = Pauli::X; break;
      case 'Y': letters[q] = Pauli::Y; break;
      case 'Z': letters[q] = Pauli::Z; break;
      default:
        throw ConfigError("invalid Pauli letter '" + std::string(1, word[q]) +
                          "' in word '" + std::string(word) + "'");
    }
  }
  return PauliString(word.size(), letters);
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t q, Pauli p) {
  return PauliString(n_qubits, {{q, p}});
}

Pauli PauliString::at(std::size_t q) const {
  if (q >= n_qubits_) throw DimensionError("qubit index out of range");
  const auto it = letters_.find(q);
  return it == letters_.end() ? Pauli::I : it->second;
}

std::string PauliString::to_string() const {
  std::string out(n_qubits_, 'I');
  for (const auto& [q, p] : letters_) out[q] = pauli_char(p);
  return out;
}

std::complex<double> PhasedString::phase() const {
  constexpr std::complex<double> kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[power & 3u];
}

PhasedString pauli_mul(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::map<std::size_t, Pauli> letters = a.letters();
  unsigned power = 0;
  for (const auto& [q, pb] : b.letters()) {
    const auto it = letters.find(q);
    if (it == letters.end()) {
      letters.emplace(q, pb);
      continue;
    }
    const auto& prod = kProduct[static_cast<int>(it->second)][static_cast<int>(pb)];
    power += prod.power;
    if (prod.letter == Pauli::I) {
      letters.erase(it);
    } else {
      it->second = prod.letter;
    }
  }
  return {static_cast<std::uint8_t>(power & 3u), PauliString(a.n_qubits(), letters)};
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::size_t clashes = 0;
  for (const auto& [q, pa] : a.letters()) {
    const auto it = b.letters().find(q);
    if (it != b.letters().end() && it->second != pa) ++clashes;
  }
  return clashes % 2 == 0;
}

std::vector<std::size_t> support(const PauliString& h) {
  std::vector<std::size_t> out;
  out.reserve(h.weight());
  for (const auto& [q, p] : h.letters()) out.push_back(q);
  return out;
}

QubitMask support_mask(const PauliString& h) {
  if (h.n_qubits() > kMaxMaskQubits) {
    throw DimensionError("bitmask supports at most 63 qubits");
  }
  QubitMask mask = 0;
  for (const auto& [q, p] : h.letters()) mask |= QubitMask{1} << q;
  return mask;
}

bool is_diagonal(const PauliString& h) {
  for (const auto& [q, p] : h.letters()) {
    if (p != Pauli::Z) return false;
  }
  return true;
}

Eigen::MatrixXcd to_matrix(const PauliString& h, std::size_t max_qubits) {
  const std::size_t n = h.n_qubits();
  if (n > max_qubits) {
    throw DimensionError("dense export of " + std::to_string(n) +
                         " qubits exceeds the cap of " + std::to_string(max_qubits));
  }
  // h|i> = i^{#Y} (-1)^{popcount(i & zy)} |i ^ flip>
  std::size_t flip = 0, sign_mask = 0, n_y = 0;
  for (const auto& [q, p] : h.letters()) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    if (p == Pauli::X || p == Pauli::Y) flip |= bit;
    if (p == Pauli::Y || p == Pauli::Z) sign_mask |= bit;
    if (p == Pauli::Y) ++n_y;
  }
  constexpr std::complex<double> kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> y_phase = kPowers[n_y & 3u];
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const double sign = (std::popcount(col & sign_mask) % 2) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) = sign * y_phase;
  }
  return m;
}

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<Term> terms)
    : n_qubits_(n_qubits) {
  for (auto& t : terms) add_term(t.coefficient, std::move(t.string));
}

void Hamiltonian::add_term(double coefficient, PauliString string) {
  if (string.n_qubits() != n_qubits_) {
    throw DimensionError("term '" + string.to_string() + "' does not act on " +
                         std::to_string(n_qubits_) + " qubits");
  }
  if (!std::isfinite(coefficient) || coefficient == 0.0) {
    throw ConfigError("coefficient of '" + string.to_string() +
                      "' must be finite and nonzero");
  }
  for (const auto& t : terms_) {
    if (t.string == string) {
      throw ConfigError("duplicate Hamiltonian term '" + string.to_string() + "'");
    }
  }
  terms_.push_back({coefficient, std::move(string)});
}

Hamiltonian Hamiltonian::parse(std::string_view text,
                               std::optional<std::size_t> n_qubits) {
  std::vector<Term> terms;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected '<coefficient> <pauli word>'");
    }
    const std::string coeff_text(trim(line.substr(0, space)));
    double coefficient = 0.0;
    std::size_t consumed = 0;
    try {
      coefficient = std::stod(coeff_text, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed == 0 || consumed != coeff_text.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad coefficient '" +
                        coeff_text + "'");
    }
    auto word = PauliString::parse(line.substr(space + 1));
    if (!n_qubits) n_qubits = word.n_qubits();
    terms.push_back({coefficient, std::move(word)});
  }
  if (!n_qubits) throw ConfigError("empty Hamiltonian text needs an explicit qubit count");
  return Hamiltonian(*n_qubits, std::move(terms));
}

std::string Hamiltonian::to_string() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) out << t.coefficient << ' ' << t.string.to_string() << '\n';
  return out.str();
}

Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("Hamiltonian size mismatch");
  std::vector<Term> merged = a.terms();
  for (const auto& t : b.terms()) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term& m) { return m.string == t.string; });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coefficient += t.coefficient;
      if (it->coefficient == 0.0) merged.erase(it);
    }
  }
  return Hamiltonian(a.n_qubits(), std::move(merged));
}

}  // namespace plateau
