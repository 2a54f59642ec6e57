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
#include <set>

#include "doctest.h"
#include "magiclab/subset_phase.hpp"
#include "oracles.hpp"

using namespace magiclab;

TEST_CASE("Feistel permutations are bijections with working inverses") {
  for (int n = 1; n <= 12; ++n) {
    const FeistelPermutation p(n, 1000 + n);
    std::vector<bool> hit(std::size_t{1} << n, false);
    for (std::uint64_t x = 0; x < hit.size(); ++x) {
      const auto y = p.forward(x);
      REQUIRE(y < hit.size());
      CHECK_FALSE(hit[y]);
      hit[y] = true;
      CHECK(p.inverse(y) == x);
    }
  }
  CHECK_THROWS(FeistelPermutation(4, 1, 3));
  CHECK(FeistelPermutation(8, 1, 6).rounds() == 6);
}

TEST_CASE("sample_subset") {
  const auto all = sample_subset(6, 6, 3);
  CHECK(std::set<std::uint64_t>(all.begin(), all.end()).size() == 64);
  const auto two = sample_subset(9, 1, 3);
  CHECK(two.size() == 2);
  CHECK(two[0] != two[1]);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = sample_subset(10, 6, seed);
    const FeistelPermutation p(10, seed);
    std::set<std::uint64_t> uniq(s.begin(), s.end());
    CHECK(uniq.size() == 64);
    for (std::uint64_t i = 0; i < s.size(); ++i) CHECK(p.inverse(s[i]) == i);
  }
  CHECK_THROWS(sample_subset(4, 0, 1));
  CHECK_THROWS(sample_subset(4, 5, 1));
}

TEST_CASE("construction examples") {
  SubsetPhaseSpec bell;
  bell.n = 2;
  bell.k = 1;
  bell.fn_kind = FunctionKind::TruthTable;
  bell.truth_table = std::vector<std::uint8_t>(4, 0);
  bell.subset_kind = SubsetKind::Explicit;
  bell.explicit_subset = {0, 3};
  const auto b = build_subset_phase_state(bell);
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(b[0] - r) < 1e-15);
  CHECK(std::abs(b[3] - r) < 1e-15);

  SubsetPhaseSpec minus;
  minus.n = 1;
  minus.k = 1;
  minus.fn_kind = FunctionKind::TruthTable;
  minus.truth_table = std::vector<std::uint8_t>{0, 1};
  minus.subset_kind = SubsetKind::Explicit;
  minus.explicit_subset = {0, 1};
  const auto m = build_subset_phase_state(minus);
  CHECK(std::abs(m[0] - r) < 1e-15);
  CHECK(std::abs(m[1] + r) < 1e-15);

  auto dup = bell;
  dup.explicit_subset = {3, 3};
  CHECK_THROWS(build_subset_phase_state(dup));
  auto badk = bell;
  badk.k = 3;
  CHECK_THROWS(build_subset_phase_state(badk));
}

TEST_CASE("every generated state has 2^k entries of modulus 2^(-k/2)") {
  for (auto kind : {FunctionKind::TruthTable, FunctionKind::KWise, FunctionKind::Hypergraph}) {
    for (int k = 1; k <= 8; ++k) {
      SubsetPhaseSpec spec;
      spec.n = 8;
      spec.k = k;
      spec.fn_kind = kind;
      spec.fn_seed = 10 * k;
      spec.subset_seed = 7 * k;
      const auto s = build_subset_phase_state(spec);
      int nonzero = 0;
      const double a = std::pow(2.0, -k / 2.0);
      for (const auto& amp : s.amplitudes()) {
        if (amp == Complex(0.0)) continue;
        ++nonzero;
        CHECK(std::abs(std::abs(amp) - a) <= 1e-12);
        CHECK(amp.imag() == 0.0);
      }
      CHECK(nonzero == (1 << k));
      CHECK(s.is_normalized());
      CHECK(build_subset_phase_state(spec) == s);
    }
  }
}

TEST_CASE("hypergraph evaluation and algebraic normal form") {
  HypergraphPolynomial p{3, {{1, 2}, {3}, {1, 2, 3}}};
  for (std::uint64_t x = 0; x < 8; ++x) {
    const int x1 = x & 1, x2 = (x >> 1) & 1, x3 = (x >> 2) & 1;
    CHECK(p.evaluate(x) == ((x1 * x2 + x3 + x1 * x2 * x3) & 1));
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 6;
    std::vector<std::uint8_t> table(std::size_t{1} << k);
    for (auto& t : table) t = rng() & 1;
    const auto poly = HypergraphPolynomial::from_truth_table(k, table);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
      CHECK(poly.evaluate(x) == ((table[x] ^ table[0]) & 1));
    }
  }
  CHECK_THROWS(HypergraphPolynomial{2, {{}}}.validate());
  CHECK_THROWS(HypergraphPolynomial{2, {{3}}}.validate());
}

namespace {

SubsetPhaseSpec identity_spec(int n, std::vector<std::vector<int>> edges) {
  SubsetPhaseSpec spec;
  spec.n = n;
  spec.k = n;
  spec.fn_kind = FunctionKind::Hypergraph;
  spec.hyperedges = std::move(edges);
  spec.subset_kind = SubsetKind::Explicit;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) spec.explicit_subset.push_back(x);
  return spec;
}

}  // namespace

TEST_CASE("compiled circuits: examples") {
  const auto graph = apply_circuit(StateVector(2), compile_subset_phase_circuit(identity_spec(2, {{1, 2}})));
  CHECK(oracle::expectation(graph, "XZ") == doctest::Approx(1.0));
  CHECK(oracle::expectation(graph, "ZX") == doctest::Approx(1.0));
  const auto flat = apply_circuit(StateVector(3), compile_subset_phase_circuit(identity_spec(3, {})));
  for (const auto& a : flat.amplitudes()) CHECK(std::abs(a - 1.0 / std::sqrt(8.0)) < 1e-12);
}

TEST_CASE("random hypergraph at k = 3, n = 4 matches the direct construction") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto poly = HypergraphPolynomial::random(3, seed);
    const FeistelPermutation perm(4, seed + 100);
    const auto out = apply_circuit(StateVector(4), compile_hypergraph_circuit(poly, 4, perm));
    std::vector<Complex> direct(16);
    for (std::uint64_t i = 0; i < 8; ++i) {
      direct[perm.forward(i)] = (poly.evaluate(i) ? -1.0 : 1.0) / std::sqrt(8.0);
    }
    for (std::size_t x = 0; x < 16; ++x) CHECK(std::abs(out[x] - direct[x]) < 1e-9);
  }
}

TEST_CASE("compile_subset_phase_circuit reproduces every spec kind") {
  for (auto kind : {FunctionKind::TruthTable, FunctionKind::KWise, FunctionKind::Hypergraph}) {
    for (auto sk : {SubsetKind::PermutationPrefix, SubsetKind::Explicit}) {
      SubsetPhaseSpec spec;
      spec.n = 5;
      spec.k = 3;
      spec.fn_kind = kind;
      spec.fn_seed = 4;
      spec.subset_kind = sk;
      spec.subset_seed = 9;
      if (sk == SubsetKind::Explicit) spec.explicit_subset = {31, 2, 17, 5, 8, 0, 22, 13};
      const auto direct = build_subset_phase_state(spec);
      const auto via = apply_circuit(StateVector(5), compile_subset_phase_circuit(spec));
      for (std::size_t x = 0; x < 32; ++x) CHECK(std::abs(direct[x] - via[x]) < 1e-9);
    }
  }
}

TEST_CASE("spec JSON round trip") {
  SubsetPhaseSpec spec;
  spec.n = 6;
  spec.k = 2;
  spec.fn_kind = FunctionKind::Hypergraph;
  spec.hyperedges = std::vector<std::vector<int>>{{1}, {1, 2}};
  spec.subset_kind = SubsetKind::Explicit;
  spec.explicit_subset = {1, 9, 33, 63};
  spec.fn_seed = 0xffffffffffffffffULL;
  const auto back = spec_from_json(spec_to_json(spec));
  CHECK(spec_to_json(back) == spec_to_json(spec));
  CHECK(back.fn_seed == spec.fn_seed);
  CHECK(build_subset_phase_state(back) == build_subset_phase_state(spec));
}
