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
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "magiclab/state.hpp"
#include "oracles.hpp"

using namespace magiclab;

TEST_CASE("construction and basic invariants") {
  StateVector z(3);
  CHECK(z.dim() == 8);
  CHECK(z[0] == Complex(1.0));
  CHECK(z.is_normalized());
  CHECK(StateVector::basis(3, 5)[5] == Complex(1.0));
  CHECK(StateVector::plus(4).is_normalized(1e-12));
  CHECK(StateVector::t_state().is_normalized(1e-12));
  CHECK_THROWS(StateVector(0));
  CHECK_THROWS(StateVector(31));
  CHECK_THROWS(StateVector(2, std::vector<Complex>(3)));
  CHECK_THROWS(StateVector(2, std::vector<Complex>(4)).normalize());
}

TEST_CASE("tensor puts the receiver on the low qubits") {
  const auto a = StateVector::basis(1, 1);   // qubit 0 = 1
  const auto b = StateVector::basis(2, 2);   // qubits (1, 2) = (0, 1)
  const auto ab = a.tensor(b);
  CHECK(ab.num_qubits() == 3);
  CHECK(ab[0b101] == Complex(1.0));
}

TEST_CASE("trace distance examples") {
  const StateVector zero(1);
  const auto one = StateVector::basis(1, 1);
  const auto plus = StateVector::plus(1);
  CHECK(trace_distance_pure(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_distance_pure(zero, one) == doctest::Approx(2.0));
  CHECK(trace_distance_pure(zero, plus) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("trace distance matches the eigenvalues of the difference") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_state(2, rng);
    const auto b = oracle::random_state(2, rng);
    const auto va = oracle::to_eigen(a), vb = oracle::to_eigen(b);
    const oracle::Mat diff = va * va.adjoint() - vb * vb.adjoint();
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(diff);
    CHECK(trace_distance_pure(a, b) ==
          doctest::Approx(es.eigenvalues().cwiseAbs().sum()).epsilon(1e-9));
  }
}

TEST_CASE("haar_sample is normalized and deterministic") {
  const auto a = haar_sample(1, 42);
  CHECK(a.is_normalized(1e-12));
  CHECK(haar_sample(10, 7) == haar_sample(10, 7));
  CHECK_FALSE(haar_sample(10, 7) == haar_sample(10, 8));
  CHECK_THROWS(haar_sample(15, 1));
}

namespace {

// Reduced state on A by explicit partial trace over the complement.
oracle::Mat reduced(const StateVector& s, const std::vector<int>& a) {
  std::uint64_t amask = 0;
  for (int q : a) amask |= std::uint64_t{1} << q;
  const std::size_t da = std::size_t{1} << a.size();
  oracle::Mat rho = oracle::Mat::Zero(da, da);
  auto local = [&](std::uint64_t x) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < a.size(); ++j) out |= ((x >> a[j]) & 1U) << j;
    return out;
  };
  for (std::uint64_t x = 0; x < s.dim(); ++x)
    for (std::uint64_t y = 0; y < s.dim(); ++y)
      if ((x & ~amask) == (y & ~amask)) rho(local(x), local(y)) += s[x] * std::conj(s[y]);
  return rho;
}

}  // namespace

TEST_CASE("entanglement entropy against the partial-trace oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const auto s = oracle::random_state(n, rng);
    for (const auto& cut : all_cuts(n)) {
      const oracle::Mat rho = reduced(s, cut.subset_a);
      Eigen::SelfAdjointEigenSolver<oracle::Mat> es(rho);
      double s1 = 0.0;
      for (auto p : es.eigenvalues())
        if (p > 1e-14) s1 -= p * std::log2(p);
      const double s2 = -std::log2((rho * rho).trace().real());
      const double e1 = entanglement_entropy(s, cut, 1);
      const double e2 = entanglement_entropy(s, cut, 2);
      CHECK(std::abs(e1 - s1) < 1e-9);
      CHECK(std::abs(e2 - s2) < 1e-9);
      CHECK(e1 >= e2 - 1e-12);
      // complement symmetry
      CutSpec comp;
      for (int q = 0; q < n; ++q)
        if (std::find(cut.subset_a.begin(), cut.subset_a.end(), q) == cut.subset_a.end())
          comp.subset_a.push_back(q);
      CHECK(std::abs(entanglement_entropy(s, comp, 1) - e1) < 1e-9);
    }
  }
}

TEST_CASE("entanglement examples") {
  const auto prod = StateVector::plus(3);
  for (const auto& cut : all_cuts(3)) {
    CHECK(std::abs(entanglement_entropy(prod, cut, 1)) < 1e-12);
    CHECK(std::abs(entanglement_entropy(prod, cut, 2)) < 1e-12);
  }
  const double r = 1.0 / std::numbers::sqrt2;
  StateVector bell(2, {r, 0.0, 0.0, r});
  CHECK(entanglement_entropy(bell, CutSpec{{0}}, 1) == doctest::Approx(1.0));
  CHECK(entanglement_entropy(bell, CutSpec{{1}}, 2) == doctest::Approx(1.0));
  std::vector<Complex> ghz(32);
  ghz[0] = ghz[31] = r;
  StateVector g(5, ghz);
  for (const auto& cut : all_cuts(5)) {
    CHECK(entanglement_entropy(g, cut, 1) == doctest::Approx(1.0));
    CHECK(entanglement_entropy(g, cut, 2) == doctest::Approx(1.0));
  }
}

TEST_CASE("cut validation") {
  CHECK(all_cuts(4).size() == 7);
  CHECK_THROWS(validate_cut(CutSpec{{}}, 3));
  CHECK_THROWS(validate_cut(CutSpec{{0, 1, 2}}, 3));
  CHECK_THROWS(validate_cut(CutSpec{{0, 0}}, 3));
  CHECK_THROWS(validate_cut(CutSpec{{3}}, 3));
  CHECK_THROWS(entanglement_entropy(StateVector(2), CutSpec{{0}}, 3));
}

TEST_CASE("binary and JSON serialization round trip") {
  const auto s = haar_sample(5, 123);
  const auto bytes = encode_state(s);
  CHECK(bytes.size() == 12 + 16 * 32);
  CHECK(bytes[0] == 'M');
  CHECK(bytes[4] == 1);
  CHECK(bytes[8] == 5);
  CHECK(decode_state(bytes) == s);
  const auto back = state_from_json(state_to_json(s));
  CHECK(back.num_qubits() == 5);
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(back[i] - s[i]) < 1e-15);

  const auto dir = std::filesystem::temp_directory_path();
  const auto bin = (dir / "magiclab_state_test.qsv").string();
  const auto js = (dir / "magiclab_state_test.json").string();
  write_state_file(bin, s);
  write_state_file(js, s);
  CHECK(read_state_file(bin) == s);
  CHECK(read_state_file(js).num_qubits() == 5);
  std::filesystem::remove(bin);
  std::filesystem::remove(js);

  auto bad = bytes;
  bad[4] = 9;
  CHECK_THROWS(decode_state(bad));
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS(decode_state(bad));
}
