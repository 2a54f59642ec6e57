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
#include "json.hpp"
#include "magiclab/catalog.hpp"
#include "magiclab/circuit.hpp"
#include "magiclab/convex.hpp"
#include "magiclab/entropy.hpp"
#include "magiclab/subset_phase.hpp"
#include "oracles.hpp"

using namespace magiclab;

namespace {

const StabilizerCatalog& catalog(int n) {
  static std::vector<StabilizerCatalog> cache = [] {
    std::vector<StabilizerCatalog> v;
    for (int m = 1; m <= 3; ++m) v.push_back(enumerate_stabilizers(m));
    return v;
  }();
  return cache.at(n - 1);
}

SubsetPhaseSpec bell_spec() {
  SubsetPhaseSpec spec;
  spec.n = 2;
  spec.k = 1;
  spec.fn_kind = FunctionKind::TruthTable;
  spec.truth_table = std::vector<std::uint8_t>(4, 0);
  spec.subset_kind = SubsetKind::Explicit;
  spec.explicit_subset = {0, 3};
  return spec;
}

// Single-qubit robustness from the Bloch vector: max(1, |r|_1).
double qubit_robustness_oracle(const StateVector& s) {
  const double x = oracle::expectation(s, "X");
  const double y = oracle::expectation(s, "Y");
  const double z = oracle::expectation(s, "Z");
  return std::max(1.0, std::abs(x) + std::abs(y) + std::abs(z));
}

// Max overlap with the six octahedron states, written out by hand.
double qubit_fidelity_oracle(const StateVector& s) {
  const double x = oracle::expectation(s, "X");
  const double y = oracle::expectation(s, "Y");
  const double z = oracle::expectation(s, "Z");
  const double m = std::max({std::abs(x), std::abs(y), std::abs(z)});
  return (1.0 + m) / 2.0;
}

}  // namespace

TEST_CASE("robustness of stabilizer states is zero") {
  const auto bell = build_subset_phase_state(bell_spec());
  const auto cert = robustness_lp(bell, catalog(2));
  CHECK(cert.value_bits == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-9));
  CHECK(cert.residual < 1e-9);
  for (std::size_t i = 0; i < catalog(3).count(); i += 53) {
    CHECK(std::abs(robustness_lp(catalog(3).states[i], catalog(3)).value_bits) < 1e-9);
  }
}

TEST_CASE("single-qubit robustness matches the Bloch oracle") {
  const auto t = robustness_lp(StateVector::t_state(), catalog(1));
  CHECK(std::abs(t.value_bits - 0.5) < 1e-9);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = oracle::random_state(1, rng);
    const auto cert = robustness_lp(s, catalog(1));
    CHECK(std::abs(cert.l1_norm - qubit_robustness_oracle(s)) < 1e-8);
    CHECK(cert.residual < 1e-9);
  }
}

TEST_CASE("robustness decomposition reproduces the state") {
  std::mt19937_64 rng(5);
  const auto s = oracle::random_state(2, rng);
  const auto cert = robustness_lp(s, catalog(2));
  oracle::Mat rho = oracle::Mat::Zero(4, 4);
  double l1 = 0.0;
  for (const auto& [idx, c] : cert.coefficients) {
    const auto v = oracle::to_eigen(catalog(2).states[idx]);
    rho += c * v * v.adjoint();
    l1 += std::abs(c);
  }
  const auto v = oracle::to_eigen(s);
  CHECK((rho - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(std::abs(l1 - cert.l1_norm) < 1e-9);
  CHECK(cert.value_bits > 0.0);
}

TEST_CASE("robustness needs opt-in at four qubits") {
  const auto cat4 = enumerate_stabilizers(4);
  CHECK_THROWS_AS(robustness_lp(StateVector(4), cat4), std::invalid_argument);
  CHECK_THROWS(robustness_lp(StateVector(3), catalog(2)));
}

TEST_CASE("stabilizer fidelity") {
  const double f = stabilizer_fidelity(StateVector::t_state(), catalog(1));
  CHECK(std::abs(f + std::log2(std::pow(std::cos(std::numbers::pi / 8), 2))) < 1e-12);
  CHECK(std::abs(f - 0.2284) < 1e-4);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = oracle::random_state(1, rng);
    CHECK(std::abs(stabilizer_fidelity(s, catalog(1)) + std::log2(qubit_fidelity_oracle(s))) <
          1e-12);
  }
  CHECK(std::abs(stabilizer_fidelity(catalog(3).states[17], catalog(3))) < 1e-12);
}

TEST_CASE("subset-phase certificate") {
  const auto bell = bell_spec();
  const auto cert = robustness_certificate_subset_phase(bell);
  CHECK(std::abs(cert.value_bits - 1.0) < 1e-12);
  CHECK(cert.term_count == 4);

  SubsetPhaseSpec spec;
  spec.n = 3;
  spec.k = 2;
  spec.fn_seed = 9;
  spec.subset_seed = 4;
  const auto c3 = robustness_certificate_subset_phase(spec);
  CHECK(std::abs(c3.l1_norm - 4.0) < 1e-12);
  CHECK(c3.residual <= 1e-9);
  CHECK(c3.term_count == 4 + 12);
  const auto psi = build_subset_phase_state(spec);
  CHECK(robustness_lp(psi, catalog(3)).value_bits <= c3.value_bits + 1e-9);

  // Dense reconstruction from the stored terms; every term is a stabilizer state.
  oracle::Mat rho = oracle::Mat::Zero(8, 8);
  for (const auto& term : c3.terms) {
    std::vector<Complex> amps(8, 0.0);
    for (const auto& [x, a] : term.support) amps[x] = a;
    const StateVector phi(3, amps);
    CHECK(phi.is_normalized(1e-12));
    CHECK(stabilizer_group(phi).nullity == 0);
    const auto v = oracle::to_eigen(phi);
    rho += term.coefficient * v * v.adjoint();
  }
  const auto v = oracle::to_eigen(psi);
  CHECK((rho - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-9);

  // Large subsets stream the residual without storing terms.
  SubsetPhaseSpec big;
  big.n = 12;
  big.k = 10;
  big.fn_seed = 1;
  big.subset_seed = 2;
  const auto cb = robustness_certificate_subset_phase(big);
  CHECK(cb.terms.empty());
  CHECK(cb.term_count == 1024ULL * 1024ULL);
  CHECK(std::abs(cb.value_bits - 10.0) < 1e-12);
  CHECK(cb.residual <= 1e-9);
  CHECK(nlohmann::json::parse(cb.to_json())["measure"] == "robustness");
}

TEST_CASE("extent of T and T x T") {
  const double fid = stabilizer_fidelity(StateVector::t_state(), catalog(1));
  const auto t = stabilizer_extent(StateVector::t_state(), catalog(1));
  // single-qubit extent is the inverse fidelity
  CHECK(std::abs(t.value_bits - fid) < 1e-6);
  CHECK(t.value_bits >= 0.2284 - 1e-4);
  CHECK(t.value_bits <= 0.5);
  CHECK(t.lower_bound_bits <= t.value_bits + 1e-12);
  CHECK(t.residual < 1e-9);

  const auto tt = StateVector::t_state().tensor(StateVector::t_state());
  const auto c2 = stabilizer_extent(tt, catalog(2));
  CHECK(c2.value_bits <= 2.0 * t.value_bits + 1e-3);
  // multiplicative for product states of up to three qubits
  CHECK(std::abs(c2.value_bits - 2.0 * t.value_bits) < 1e-6);
  CHECK(std::abs(dmax_pure(tt, catalog(2)) - c2.value_bits) < 1e-12);
  CHECK(std::abs(dmax_pure(StateVector::t_state(), catalog(1)) - t.value_bits) < 1e-12);

  // reconstruction from the reported coefficients
  std::vector<Complex> recon(4, 0.0);
  double l1 = 0.0;
  for (const auto& [j, c] : c2.coefficients) {
    for (std::size_t x = 0; x < 4; ++x) recon[x] += c * catalog(2).states[j][x];
    l1 += std::abs(c);
  }
  for (std::size_t x = 0; x < 4; ++x) CHECK(std::abs(recon[x] - tt[x]) < 1e-9);
  CHECK(std::abs(2.0 * std::log2(l1) - c2.value_bits) < 1e-12);
}

TEST_CASE("extent reports non-convergence with both bounds") {
  ExtentOptions opt;
  opt.max_rounds = 0;
  opt.target_gap = 1e-12;
  try {
    stabilizer_extent(haar_sample(2, 3), catalog(2), opt);
    FAIL("expected ExtentConvergenceError");
  } catch (const ExtentConvergenceError& e) {
    CHECK(e.lower_bits <= e.upper_bits + 1e-12);
  }
}

TEST_CASE("all measures vanish on catalog members") {
  for (int n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i < catalog(n).count(); i += (n == 3 ? 37 : 1)) {
      const auto& s = catalog(n).states[i];
      CHECK(std::abs(robustness_lp(s, catalog(n)).value_bits) <= 1e-6);
      CHECK(std::abs(stabilizer_extent(s, catalog(n)).value_bits) <= 1e-6);
      CHECK(std::abs(stabilizer_fidelity(s, catalog(n))) <= 1e-6);
    }
  }
}

TEST_CASE("monotone sandwich on random two-qubit states") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = haar_sample(2, seed);
    const double m2 = stabilizer_entropy(s, 2).value;
    const double f = stabilizer_fidelity(s, catalog(2));
    const double xi = stabilizer_extent(s, catalog(2)).value_bits;
    const double r = robustness_lp(s, catalog(2)).value_bits;
    CHECK(m2 / 4.0 < f);
    CHECK(f <= xi + 1e-9);
    CHECK(xi <= r + 1e-6);
    CHECK(f > 1e-6);
  }
}

TEST_CASE("convex measures are Clifford invariant") {
  std::mt19937_64 rng(8);
  for (int n = 2; n <= 3; ++n) {
    const auto s = oracle::random_state(n, rng);
    const double r0 = robustness_lp(s, catalog(n)).value_bits;
    const double e0 = stabilizer_extent(s, catalog(n)).value_bits;
    const double f0 = stabilizer_fidelity(s, catalog(n));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto u = apply_circuit(s, random_clifford_circuit(n, seed));
      CHECK(std::abs(robustness_lp(u, catalog(n)).value_bits - r0) < 1e-6);
      CHECK(std::abs(stabilizer_extent(u, catalog(n)).value_bits - e0) < 1e-6);
      CHECK(std::abs(stabilizer_fidelity(u, catalog(n)) - f0) < 1e-6);
    }
  }
}

TEST_CASE("certificate bounds the LP on subset phase states") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    SubsetPhaseSpec spec;
    spec.n = 3;
    spec.k = 1 + static_cast<int>(seed % 3);
    spec.fn_seed = seed;
    spec.subset_seed = seed + 100;
    const auto lp = robustness_lp(build_subset_phase_state(spec), catalog(3));
    const auto cert = robustness_certificate_subset_phase(spec);
    CHECK(lp.value_bits <= cert.value_bits + 1e-9);
    CHECK(std::abs(cert.value_bits - spec.k) < 1e-12);
  }
}
