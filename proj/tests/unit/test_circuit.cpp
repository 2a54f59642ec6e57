// Copyright 2026 The magiclab Authors
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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "doctest.h"
#include "magiclab/circuit.hpp"
#include "oracles.hpp"

using namespace magiclab;

namespace {

oracle::Mat to_mat(const Matrix2& u) {
  oracle::Mat m(2, 2);
  m << u[0], u[1], u[2], u[3];
  return m;
}

// Dense unitary of a circuit, built gate by gate from Kronecker products.
oracle::Mat dense_unitary(const GateCircuit& c) {
  const int n = c.num_qubits();
  const std::size_t d = std::size_t{1} << n;
  oracle::Mat u = oracle::Mat::Identity(d, d);
  for (const auto& g : c.gates()) {
    oracle::Mat step;
    if (auto* s = std::get_if<SingleQubitGate>(&g)) {
      step = oracle::embed_1q(to_mat(s->u), s->target, n);
    } else if (auto* z = std::get_if<MultiControlledZ>(&g)) {
      step = oracle::Mat::Identity(d, d);
      for (std::size_t x = 0; x < d; ++x) {
        bool all = true;
        for (int q : z->sites) all = all && ((x >> q) & 1U);
        if (all) step(x, x) = -1.0;
      }
    } else if (auto* cg = std::get_if<CliffordGate>(&g)) {
      if (cg->kind == CliffordGate::Kind::CNOT) {
        step = oracle::dense_cnot(cg->q0, cg->q1, n);
      } else {
        oracle::Mat m(2, 2);
        const double r = 1.0 / std::numbers::sqrt2;
        if (cg->kind == CliffordGate::Kind::H) m << r, r, r, -r;
        else m << 1, 0, 0, oracle::C(0, 1);
        step = oracle::embed_1q(m, cg->q0, n);
      }
    } else {
      const auto& p = std::get<BasisPermutation>(g);
      step = oracle::Mat::Zero(d, d);
      for (std::size_t x = 0; x < d; ++x) step(p.table[x], x) = 1.0;
    }
    u = step * u;
  }
  return u;
}

oracle::Mat dense(const PauliOperator& p) {
  static const oracle::C kI[4] = {1.0, {0, 1}, -1.0, {0, -1}};
  return kI[p.phase_exp & 3] *
         oracle::dense_pauli(oracle::label_of(p.n, p.x_mask, p.z_mask));
}

GateCircuit random_mixed_circuit(int n, std::mt19937_64& rng, Rng& lib_rng) {
  GateCircuit c(n);
  for (int i = 0; i < 25; ++i) {
    const int q = static_cast<int>(rng() % n);
    int q2 = static_cast<int>(rng() % n);
    if (q2 == q) q2 = (q + 1) % n;
    switch (rng() % 6) {
      case 0: c.h(q); break;
      case 1: c.s(q); break;
      case 2: if (n > 1) c.cnot(q, q2); break;
      case 3: if (n > 1) c.cz(q, q2); break;
      case 4: c.single(haar_unitary_2x2(lib_rng), q); break;
      default:
        if (n > 2) c.mcz({0, 1, 2});
        else c.single(matrix_t(), q);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("apply_circuit examples") {
  GateCircuit bell(2);
  bell.h(0).cnot(0, 1);
  const auto out = apply_circuit(StateVector(2), bell);
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(out[0] - r) < 1e-12);
  CHECK(std::abs(out[3] - r) < 1e-12);
  CHECK(std::abs(out[1]) < 1e-12);

  GateCircuit graph(2);
  graph.cz(0, 1);
  const auto g = apply_circuit(StateVector::plus(2), graph);
  CHECK(oracle::expectation(g, "XZ") == doctest::Approx(1.0));
  CHECK(oracle::expectation(g, "ZX") == doctest::Approx(1.0));

  const auto psi = haar_sample(3, 9);
  CHECK(apply_circuit(psi, GateCircuit(3)) == psi);
}

TEST_CASE("apply_circuit agrees with dense unitaries and preserves norm") {
  std::mt19937_64 rng(1);
  Rng lib_rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    auto c = random_mixed_circuit(n, rng, lib_rng);
    if (trial % 5 == 0) {
      std::vector<std::uint64_t> table(std::size_t{1} << n);
      for (std::size_t x = 0; x < table.size(); ++x) table[x] = x;
      std::shuffle(table.begin(), table.end(), rng);
      c.permutation(table);
    }
    c.validate();
    const auto psi = oracle::random_state(n, rng);
    const auto out = apply_circuit(psi, c);
    CHECK(std::abs(out.norm_squared() - 1.0) < 1e-9);
    CHECK((oracle::to_eigen(out) - dense_unitary(c) * oracle::to_eigen(psi)).norm() < 1e-10);
    const auto back = apply_circuit(out, c.adjoint());
    CHECK((oracle::to_eigen(back) - oracle::to_eigen(psi)).norm() < 1e-10);
  }
}

TEST_CASE("validation rejects bad records") {
  CHECK_THROWS(GateCircuit(2).h(2).validate());
  CHECK_THROWS(GateCircuit(2).cnot(1, 1).validate());
  CHECK_THROWS(GateCircuit(3).mcz({1}).validate());
  CHECK_THROWS(GateCircuit(3).mcz({1, 1}).validate());
  CHECK_THROWS(GateCircuit(1).single(Matrix2{1.0, 1.0, 0.0, 1.0}, 0).validate());
  CHECK_THROWS(GateCircuit(1).permutation({0, 0}).validate());
  CHECK_THROWS(apply_circuit(StateVector(2), GateCircuit(2).h(5)));
  CHECK_THROWS(apply_circuit(StateVector(3), GateCircuit(2)));
}

TEST_CASE("embedding into a wider register") {
  std::mt19937_64 rng(4);
  Rng lib_rng(5);
  auto small = random_mixed_circuit(3, rng, lib_rng);
  small.permutation({3, 1, 7, 0, 2, 6, 5, 4});
  const std::vector<int> map = {4, 0, 2};
  const auto wide = small.embedded(5, map);
  wide.validate();
  // Compare on a product input: embedded action on qubits {4,0,2} with the
  // spectator qubits 1 and 3 untouched.
  const auto a = oracle::random_state(3, rng);
  const auto spect = oracle::random_state(2, rng);
  auto build = [&](const StateVector& inner) {
    std::vector<Complex> amps(32);
    for (std::uint64_t y = 0; y < 32; ++y) {
      const std::uint64_t xi = ((y >> 4) & 1U) | (((y >> 0) & 1U) << 1) | (((y >> 2) & 1U) << 2);
      const std::uint64_t xs = ((y >> 1) & 1U) | (((y >> 3) & 1U) << 1);
      amps[y] = inner[xi] * spect[xs];
    }
    return StateVector(5, amps);
  };
  const auto lhs = apply_circuit(build(a), wide);
  const auto rhs = build(apply_circuit(a, small));
  for (std::size_t i = 0; i < 32; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
}

TEST_CASE("conjugate_pauli agrees with dense conjugation") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const auto c = random_clifford_circuit(n, 1000 + trial);
    CHECK(c.is_clifford());
    const auto u = dense_unitary(c);
    for (int rep = 0; rep < 5; ++rep) {
      const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
      PauliOperator p{n, rng() & mask, rng() & mask, static_cast<int>(rng() & 3)};
      const auto img = conjugate_pauli(c, p);
      CHECK((dense(img) - u * dense(p) * u.adjoint()).norm() < 1e-10);
    }
  }
  GateCircuit cz(2);
  cz.cz(0, 1);
  const auto xz = conjugate_pauli(cz, PauliOperator::from_string("XI"));
  CHECK(xz.to_string() == "XZ");
}

TEST_CASE("conjugate_pauli rejects non-Clifford gates") {
  CHECK_THROWS(conjugate_pauli(GateCircuit(1).single(matrix_t(), 0),
                               PauliOperator::from_string("X")));
  CHECK_THROWS(conjugate_pauli(GateCircuit(3).mcz({0, 1, 2}),
                               PauliOperator::from_string("XII")));
  CHECK_FALSE(GateCircuit(1).single(matrix_t(), 0).is_clifford());
  CHECK(GateCircuit(1).single(matrix_sdg(), 0).is_clifford());
}

namespace {

// Symplectic action as a key: unsigned images of X_j and Z_j.
std::vector<std::uint64_t> symplectic_key(const GateCircuit& c) {
  const int n = c.num_qubits();
  std::vector<std::uint64_t> key;
  for (int j = 0; j < n; ++j) {
    for (int zpart = 0; zpart < 2; ++zpart) {
      PauliOperator p{n, zpart ? 0 : std::uint64_t{1} << j,
                      zpart ? std::uint64_t{1} << j : 0, 0};
      const auto img = conjugate_pauli(c, p);
      key.push_back(img.index());
    }
  }
  return key;
}

}  // namespace

TEST_CASE("index enumeration is a bijection onto Sp(2m, F2)") {
  CHECK(symplectic_group_order(1) == 6);
  CHECK(symplectic_group_order(2) == 720);
  CHECK(symplectic_group_order(3) == 1451520);
  for (int m = 1; m <= 2; ++m) {
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t i = 0; i < symplectic_group_order(m); ++i) {
      const auto c = clifford_from_index(m, i);
      const auto key = symplectic_key(c);
      // images must remain Pauli and pairwise commute correctly
      seen.insert(key);
    }
    CHECK(seen.size() == symplectic_group_order(m));
  }
}

TEST_CASE("single-qubit random Cliffords cover all 24 elements evenly") {
  std::map<std::pair<std::string, std::string>, int> counts;
  const int samples = 24000;
  for (int s = 0; s < samples; ++s) {
    const auto c = random_clifford_circuit(1, s);
    counts[{conjugate_pauli(c, PauliOperator::from_string("X")).to_string(),
            conjugate_pauli(c, PauliOperator::from_string("Z")).to_string()}]++;
  }
  CHECK(counts.size() == 24);
  for (const auto& [k, v] : counts) {
    CHECK(v > 800);
    CHECK(v < 1200);
  }
}

TEST_CASE("random Cliffords are deterministic and map Paulis to Paulis") {
  const auto a = random_clifford_circuit(4, 77);
  const auto b = random_clifford_circuit(4, 77);
  CHECK(symplectic_key(a) == symplectic_key(b));
  CHECK(a.size() == b.size());
  // Commutation relations of the generator images are preserved.
  std::vector<PauliOperator> imgs;
  for (int j = 0; j < 4; ++j) {
    imgs.push_back(conjugate_pauli(a, PauliOperator{4, std::uint64_t{1} << j, 0, 0}));
    imgs.push_back(conjugate_pauli(a, PauliOperator{4, 0, std::uint64_t{1} << j, 0}));
  }
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = 0; j < imgs.size(); ++j) {
      const bool expect = !(i / 2 == j / 2 && i != j);
      CHECK(commutes(imgs[i], imgs[j]) == expect);
      CHECK(imgs[i].is_hermitian());
    }
}

TEST_CASE("Clifford circuits permute the Pauli spectrum") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const auto psi = oracle::random_state(n, rng);
    const auto out = apply_circuit(psi, random_clifford_circuit(n, trial));
    auto a = full_spectrum(psi).values;
    auto b = full_spectrum(out).values;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
}

TEST_CASE("single-qubit gates leave every cut entropy unchanged") {
  std::mt19937_64 rng(13);
  Rng lib_rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4;
    const auto psi = oracle::random_state(n, rng);
    GateCircuit c(n);
    for (int q = 0; q < n; ++q) c.single(haar_unitary_2x2(lib_rng), q);
    const auto out = apply_circuit(psi, c);
    for (const auto& cut : all_cuts(n)) {
      CHECK(std::abs(entanglement_entropy(out, cut, 1) -
                     entanglement_entropy(psi, cut, 1)) < 1e-9);
    }
  }
}

TEST_CASE("haar 2x2 unitaries are unitary") {
  Rng r(3);
  for (int i = 0; i < 100; ++i) CHECK(is_unitary(haar_unitary_2x2(r)));
}
