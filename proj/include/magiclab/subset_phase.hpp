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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magiclab/circuit.hpp"
#include "magiclab/kwise.hpp"
#include "magiclab/state.hpp"

namespace magiclab {

/// Keyed Feistel network on n-bit strings. A toy: the round function is a
/// 64-bit mixer, not a pseudorandom function, so this is not secure in any
/// cryptographic sense. Odd n uses an unbalanced split.
class FeistelPermutation {
 public:
  FeistelPermutation(int n_bits, std::uint64_t seed, int rounds = 4);

  int bits() const { return n_; }
  int rounds() const { return static_cast<int>(keys_.size()); }
  const std::vector<std::uint64_t>& round_keys() const { return keys_; }

  std::uint64_t forward(std::uint64_t x) const;
  std::uint64_t inverse(std::uint64_t y) const;

 private:
  std::uint64_t round_fn(int r, std::uint64_t half) const;

  int n_;
  int left_bits_;
  int right_bits_;
  std::vector<std::uint64_t> keys_;
};

/// Images of 0 .. 2^k - 1 under the seeded Feistel permutation on n bits.
std::vector<std::uint64_t> sample_subset(int n, int k, std::uint64_t seed);

/// f(x) = sum over hyperedges e of prod_{v in e} x_v (mod 2). Variables are
/// numbered 1..k; variable v is bit v-1 of x.
struct HypergraphPolynomial {
  int k = 0;
  std::vector<std::vector<int>> hyperedges;

  int evaluate(std::uint64_t x) const;
  void validate() const;

  /// Algebraic normal form of a truth table of length 2^k (Moebius transform).
  static HypergraphPolynomial from_truth_table(int k, const std::vector<std::uint8_t>& table);
  /// Every nonempty monomial independently with probability 1/2, which makes
  /// f a uniformly random function up to its constant term.
  static HypergraphPolynomial random(int k, std::uint64_t seed);
};

enum class FunctionKind { TruthTable, KWise, Hypergraph };
enum class SubsetKind { PermutationPrefix, Explicit };

const char* to_string(FunctionKind kind);
const char* to_string(SubsetKind kind);
FunctionKind function_kind_from_string(const std::string& s);
SubsetKind subset_kind_from_string(const std::string& s);

/// Everything needed to rebuild one subset phase state
/// (1/sqrt|S|) sum_{x in S} (-1)^f(x) |x>, with |S| = 2^k.
///
/// TruthTable: f is a table over the n-bit strings (random from fn_seed
/// unless `truth_table` is given). KWise and Hypergraph: f is evaluated on
/// the k-bit index of x within S.
struct SubsetPhaseSpec {
  int n = 1;
  int k = 1;
  FunctionKind fn_kind = FunctionKind::KWise;
  int kwise_t = 8;
  std::uint64_t fn_seed = 0;
  SubsetKind subset_kind = SubsetKind::PermutationPrefix;
  std::uint64_t subset_seed = 0;
  std::vector<std::uint64_t> explicit_subset;
  std::optional<std::vector<std::uint8_t>> truth_table;
  std::optional<std::vector<std::vector<int>>> hyperedges;

  void validate() const;
};

/// S in index order.
std::vector<std::uint64_t> resolve_subset(const SubsetPhaseSpec& spec);
/// Sign bits of the amplitudes, indexed like resolve_subset.
std::vector<std::uint8_t> resolve_phases(const SubsetPhaseSpec& spec);

StateVector build_subset_phase_state(const SubsetPhaseSpec& spec);

/// H on qubits 0..k-1, a controlled-Z per hyperedge (Z for single vertices),
/// then the basis permutation `perm` on all n qubits.
GateCircuit compile_hypergraph_circuit(const HypergraphPolynomial& poly, int n,
                                       const FeistelPermutation& perm);

/// Circuit preparing build_subset_phase_state(spec) from |0...0>.
GateCircuit compile_subset_phase_circuit(const SubsetPhaseSpec& spec);

std::string spec_to_json(const SubsetPhaseSpec& spec);
SubsetPhaseSpec spec_from_json(const std::string& text);

}  // namespace magiclab
