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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "magiclab/circuit.hpp"
#include "magiclab/otoc.hpp"
#include "magiclab/rng.hpp"
#include "oracles.hpp"

using namespace magiclab;

namespace {

GateCircuit random_circuit(int n, std::uint64_t seed, int layers = 4) {
  Rng rng(seed);
  GateCircuit c(n);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) c.single(haar_unitary_2x2(rng), q);
    for (int q = 0; q + 1 < n; ++q) c.cnot(q, q + 1);
  }
  return c;
}

oracle::Mat dense_unitary(const GateCircuit& c) {
  const int n = c.num_qubits();
  const std::uint64_t d = std::uint64_t{1} << n;
  oracle::Mat u(d, d);
  for (std::uint64_t x = 0; x < d; ++x) u.col(x) = oracle::to_eigen(apply_circuit(StateVector::basis(n, x), c));
  return u;
}

PauliOperator random_nonidentity(int n, std::mt19937_64& rng) {
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  std::uniform_int_distribution<std::uint64_t> pick(1, count - 1);
  return PauliOperator::from_index(n, pick(rng));
}

// Dense (1/d) tr(U^dag P1 U Q1 ... ).
Complex dense_otoc(const GateCircuit& c,
                   const std::vector<std::pair<PauliOperator, PauliOperator>>& pairs) {
  const oracle::Mat u = dense_unitary(c);
  oracle::Mat prod = oracle::Mat::Identity(u.rows(), u.cols());
  for (const auto& [p, q] : pairs) {
    prod = prod * u.adjoint() * oracle::dense_pauli(p.to_string()) * u *
           oracle::dense_pauli(q.to_string());
  }
  return prod.trace() / static_cast<double>(u.rows());
}

}  // namespace

TEST_CASE("correlator values at the identity") {
  OtocSpec spec{GateCircuit(1), {{PauliOperator::from_string("X"), PauliOperator::from_string("X")}}};
  CHECK(std::abs(otoc_value(spec) - Complex(1.0)) < 1e-12);
  spec.pauli_pairs = {{PauliOperator::from_string("X"), PauliOperator::from_string("Z")},
                      {PauliOperator::from_string("X"), PauliOperator::from_string("Z")}};
  CHECK(std::abs(otoc_value(spec) - Complex(-1.0)) < 1e-12);
}

TEST_CASE("identity operators are rejected") {
  OtocSpec spec{GateCircuit(2), {{PauliOperator::from_string("II"), PauliOperator::from_string("XZ")}}};
  CHECK_THROWS_AS(otoc_value(spec), std::invalid_argument);
  spec.pauli_pairs = {{PauliOperator::from_string("X"), PauliOperator::from_string("Z")}};
  CHECK_THROWS_AS(otoc_value(spec), std::invalid_argument);
}

TEST_CASE("correlator matches the dense oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    OtocSpec spec{random_circuit(n, 100 + trial), {}};
    const int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) spec.pauli_pairs.emplace_back(random_nonidentity(n, rng), random_nonidentity(n, rng));
    CHECK(std::abs(otoc_value(spec) - dense_otoc(spec.unitary, spec.pauli_pairs)) < 1e-10);
  }
}

TEST_CASE("Clifford correlators are 0, +-1 or +-i") {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    OtocSpec spec{random_clifford_circuit(2, seed), {}};
    for (int i = 0; i < 2; ++i) spec.pauli_pairs.emplace_back(random_nonidentity(2, rng), random_nonidentity(2, rng));
    const Complex v = otoc_value(spec);
    const bool on_lattice = std::abs(v) < 1e-12 || std::abs(v - 1.0) < 1e-12 ||
                            std::abs(v + 1.0) < 1e-12 || std::abs(v - Complex(0, 1)) < 1e-12 ||
                            std::abs(v + Complex(0, 1)) < 1e-12;
    CHECK(on_lattice);
  }
}

TEST_CASE("averaged correlator of known circuits") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = random_clifford_circuit(3, seed);
    CHECK(std::abs(averaged_otoc(c, 2) - 1.0 / 64.0) < 1e-12);
    CHECK(std::abs(averaged_otoc(c, 3) - 1.0 / 64.0) < 1e-12);
  }
  GateCircuit th(1);
  th.h(0).single(matrix_t(), 0);
  CHECK(std::abs(averaged_otoc(th, 2) - 0.1875) < 1e-12);
  CHECK(std::abs(averaged_otoc(th, 2, OtocMethod::Direct) - 0.1875) < 1e-12);
}

TEST_CASE("direct average agrees with the spectrum identity") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = random_circuit(2, seed);
    CHECK(std::abs(averaged_otoc(c, 2) - averaged_otoc(c, 2, OtocMethod::Direct)) < 1e-9);
  }
  const auto c3 = random_circuit(3, 77, 2);
  CHECK(std::abs(averaged_otoc(c3, 2) - averaged_otoc(c3, 2, OtocMethod::Direct)) < 1e-9);
  CHECK_THROWS(averaged_otoc(c3, 3, OtocMethod::Direct));
}

TEST_CASE("entropy identity against the dense definition") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = random_circuit(2, 1000 + seed);
    const auto psi = apply_circuit(StateVector(2), c);
    for (int alpha : {2, 3}) {
      const double avg = averaged_otoc(c, alpha);
      CHECK(avg > 0.0);
      CHECK(avg <= 1.0 / 16.0 + 1e-15);
      const double m = std::log2(16.0 * avg) / (1.0 - alpha);
      CHECK(std::abs(m - oracle::stabilizer_renyi(psi, alpha)) < 1e-9);
    }
  }
}

TEST_CASE("scrambling ratio") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);

  // |S| = 2 states are stabilizer states: the numerator is maximal.
  SubsetPhaseSpec pair;
  pair.k = 1;
  pair.fn_seed = 5;
  pair.subset_seed = 6;
  for (const auto& row : scrambling_ratio(pair, {3, 5}, 2, seeds)) {
    CHECK(std::abs(row.subset_otoc * std::exp2(2 * row.n) - 1.0) < 1e-9);
    CHECK(row.ratio >= 1.0);
  }

  SubsetPhaseSpec four;
  four.k = 2;
  four.fn_seed = 1;
  four.subset_seed = 2;
  const auto rows = scrambling_ratio(four, {4, 6, 8}, 2, seeds);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ratio < rows[1].ratio);
  CHECK(rows[1].ratio < rows[2].ratio);
  for (const auto& row : rows) {
    CHECK(row.haar_samples == 20);
    CHECK(std::abs(std::log2(row.ratio / row.predicted_ratio)) < 0.1);
  }
}
