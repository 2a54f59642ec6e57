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

#include "magiclab/subset_phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "magiclab/rng.hpp"

namespace magiclab {

FeistelPermutation::FeistelPermutation(int n_bits, std::uint64_t seed, int rounds)
    : n_(n_bits), left_bits_((n_bits + 1) / 2), right_bits_(n_bits / 2) {
  if (n_bits < 1 || n_bits > 62) {
    throw std::out_of_range("FeistelPermutation: bits must be in [1, 62]");
  }
  if (rounds < 4) throw std::invalid_argument("FeistelPermutation: rounds must be >= 4");
  Rng rng(mix64(seed ^ 0x6665697374656c21ULL));
  keys_.resize(rounds);
  for (auto& k : keys_) k = rng();
}

std::uint64_t FeistelPermutation::round_fn(int r, std::uint64_t half) const {
  return mix64(keys_[r] ^ mix64(half + 0x9e3779b97f4a7c15ULL * (r + 1)));
}

std::uint64_t FeistelPermutation::forward(std::uint64_t x) const {
  const std::uint64_t rmask = (std::uint64_t{1} << right_bits_) - 1;
  const std::uint64_t lmask = (std::uint64_t{1} << left_bits_) - 1;
  std::uint64_t left = (x >> right_bits_) & lmask;
  std::uint64_t right = x & rmask;
  for (int r = 0; r < rounds(); ++r) {
    if (r % 2 == 0) {
      left ^= round_fn(r, right) & lmask;
    } else {
      right ^= round_fn(r, left) & rmask;
    }
  }
  return (left << right_bits_) | right;
}

std::uint64_t FeistelPermutation::inverse(std::uint64_t y) const {
  const std::uint64_t rmask = (std::uint64_t{1} << right_bits_) - 1;
  const std::uint64_t lmask = (std::uint64_t{1} << left_bits_) - 1;
  std::uint64_t left = (y >> right_bits_) & lmask;
  std::uint64_t right = y & rmask;
  for (int r = rounds() - 1; r >= 0; --r) {
    if (r % 2 == 0) {
      left ^= round_fn(r, right) & lmask;
    } else {
      right ^= round_fn(r, left) & rmask;
    }
  }
  return (left << right_bits_) | right;
}

std::vector<std::uint64_t> sample_subset(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_subset: need 1 <= k <= n");
  if (k > 30) throw std::out_of_range("sample_subset: k too large");
  const FeistelPermutation perm(n, seed);
  std::vector<std::uint64_t> out(std::size_t{1} << k);
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = perm.forward(i);
  return out;
}

int HypergraphPolynomial::evaluate(std::uint64_t x) const {
  int f = 0;
  for (const auto& e : hyperedges) {
    bool all = true;
    for (int v : e) all = all && ((x >> (v - 1)) & 1U);
    f ^= all ? 1 : 0;
  }
  return f;
}

void HypergraphPolynomial::validate() const {
  if (k < 1 || k > 30) throw std::invalid_argument("HypergraphPolynomial: k");
  for (const auto& e : hyperedges) {
    if (e.empty()) throw std::invalid_argument("HypergraphPolynomial: empty hyperedge");
    std::uint64_t seen = 0;
    for (int v : e) {
      if (v < 1 || v > k) {
        throw std::out_of_range("HypergraphPolynomial: vertex " + std::to_string(v) +
                                " outside 1.." + std::to_string(k));
      }
      if ((seen >> v) & 1U) throw std::invalid_argument("HypergraphPolynomial: repeated vertex");
      seen |= std::uint64_t{1} << v;
    }
  }
}

namespace {

// In-place Moebius transform over GF(2); it is its own inverse.
void moebius(std::vector<std::uint8_t>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i & h) a[i] ^= a[i ^ h];
}

std::vector<int> monomial_vertices(std::uint64_t mask) {
  std::vector<int> e;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1U) e.push_back(v + 1);
  return e;
}

std::vector<std::uint8_t> hypergraph_table(const HypergraphPolynomial& poly) {
  std::vector<std::uint8_t> anf(std::size_t{1} << poly.k, 0);
  for (const auto& e : poly.hyperedges) {
    std::uint64_t mask = 0;
    for (int v : e) mask |= std::uint64_t{1} << (v - 1);
    anf[mask] ^= 1;
  }
  moebius(anf);
  return anf;
}

}  // namespace

HypergraphPolynomial HypergraphPolynomial::from_truth_table(
    int k, const std::vector<std::uint8_t>& table) {
  if (table.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("from_truth_table: table must have 2^k entries");
  }
  std::vector<std::uint8_t> anf(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) anf[i] = table[i] & 1U;
  moebius(anf);
  HypergraphPolynomial poly{k, {}};
  // The constant monomial is a global sign and is dropped.
  for (std::uint64_t mask = 1; mask < anf.size(); ++mask) {
    if (anf[mask]) poly.hyperedges.push_back(monomial_vertices(mask));
  }
  return poly;
}

HypergraphPolynomial HypergraphPolynomial::random(int k, std::uint64_t seed) {
  if (k < 1 || k > 20) throw std::out_of_range("HypergraphPolynomial::random: k");
  Rng rng(mix64(seed ^ 0x6879706572677261ULL));
  HypergraphPolynomial poly{k, {}};
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    if (rng() >> 63) poly.hyperedges.push_back(monomial_vertices(mask));
  }
  return poly;
}

const char* to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::TruthTable: return "truth_table";
    case FunctionKind::KWise: return "kwise";
    default: return "hypergraph";
  }
}

const char* to_string(SubsetKind kind) {
  return kind == SubsetKind::Explicit ? "explicit_list" : "prefix_image_of_permutation";
}

FunctionKind function_kind_from_string(const std::string& s) {
  if (s == "truth_table") return FunctionKind::TruthTable;
  if (s == "kwise") return FunctionKind::KWise;
  if (s == "hypergraph") return FunctionKind::Hypergraph;
  throw std::invalid_argument("unknown function kind '" + s + "'");
}

SubsetKind subset_kind_from_string(const std::string& s) {
  if (s == "explicit_list") return SubsetKind::Explicit;
  if (s == "prefix_image_of_permutation") return SubsetKind::PermutationPrefix;
  throw std::invalid_argument("unknown subset kind '" + s + "'");
}

void SubsetPhaseSpec::validate() const {
  check_qubit_count(n, "SubsetPhaseSpec");
  if (k < 1 || k > n) {
    throw std::invalid_argument("SubsetPhaseSpec: need 1 <= k <= n (k = " +
                                std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  if (fn_kind == FunctionKind::KWise && kwise_t < 1) {
    throw std::invalid_argument("SubsetPhaseSpec: kwise_t must be >= 1");
  }
  if (subset_kind == SubsetKind::Explicit) {
    if (explicit_subset.size() != (std::size_t{1} << k)) {
      throw std::invalid_argument("SubsetPhaseSpec: explicit subset must have 2^k strings");
    }
    std::unordered_set<std::uint64_t> seen;
    for (auto x : explicit_subset) {
      if (x >> n) throw std::out_of_range("SubsetPhaseSpec: string wider than n bits");
      if (!seen.insert(x).second) {
        throw std::invalid_argument("SubsetPhaseSpec: duplicate string " + std::to_string(x) +
                                    " in explicit subset");
      }
    }
  }
  if (truth_table && truth_table->size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("SubsetPhaseSpec: truth table must have 2^n entries");
  }
  if (hyperedges) HypergraphPolynomial{k, *hyperedges}.validate();
}

std::vector<std::uint64_t> resolve_subset(const SubsetPhaseSpec& spec) {
  spec.validate();
  if (spec.subset_kind == SubsetKind::Explicit) return spec.explicit_subset;
  return sample_subset(spec.n, spec.k, spec.subset_seed);
}

namespace {

std::vector<std::uint8_t> index_phases(const SubsetPhaseSpec& spec) {
  const std::size_t size = std::size_t{1} << spec.k;
  std::vector<std::uint8_t> out(size);
  if (spec.fn_kind == FunctionKind::KWise) {
    const auto f = sample_kwise_function(spec.k, spec.kwise_t, spec.fn_seed);
    for (std::size_t i = 0; i < size; ++i) out[i] = static_cast<std::uint8_t>(f(i));
    return out;
  }
  const auto poly = spec.hyperedges ? HypergraphPolynomial{spec.k, *spec.hyperedges}
                                    : HypergraphPolynomial::random(spec.k, spec.fn_seed);
  return hypergraph_table(poly);
}

}  // namespace

std::vector<std::uint8_t> resolve_phases(const SubsetPhaseSpec& spec) {
  spec.validate();
  if (spec.fn_kind != FunctionKind::TruthTable) return index_phases(spec);
  const auto subset = resolve_subset(spec);
  std::vector<std::uint8_t> out(subset.size());
  if (spec.truth_table) {
    for (std::size_t i = 0; i < subset.size(); ++i) out[i] = (*spec.truth_table)[subset[i]] & 1U;
    return out;
  }
  if (spec.n > 26) throw std::out_of_range("truth-table functions need n <= 26");
  // One fair bit per n-bit string, drawn in string order.
  Rng rng(mix64(spec.fn_seed ^ 0x7472757468746162ULL));
  std::vector<std::uint64_t> words((std::size_t{1} << spec.n) / 64 + 1);
  for (auto& w : words) w = rng();
  for (std::size_t i = 0; i < subset.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((words[subset[i] / 64] >> (subset[i] % 64)) & 1U);
  }
  return out;
}

StateVector build_subset_phase_state(const SubsetPhaseSpec& spec) {
  spec.validate();
  if (spec.n > 14) throw std::out_of_range("build_subset_phase_state: n must be <= 14");
  const auto subset = resolve_subset(spec);
  const auto phases = resolve_phases(spec);
  std::vector<Complex> amps(std::size_t{1} << spec.n);
  const double a = 1.0 / std::sqrt(static_cast<double>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) amps[subset[i]] = phases[i] ? -a : a;
  return StateVector(spec.n, std::move(amps));
}

namespace {

GateCircuit compile_with_table(const HypergraphPolynomial& poly, int n,
                               std::vector<std::uint64_t> table) {
  poly.validate();
  if (poly.k > n) throw std::invalid_argument("compile: polynomial has more variables than qubits");
  GateCircuit c(n);
  for (int q = 0; q < poly.k; ++q) c.h(q);
  for (const auto& e : poly.hyperedges) {
    if (e.size() == 1) {
      c.single(matrix_z(), e[0] - 1);
    } else {
      std::vector<int> sites;
      for (int v : e) sites.push_back(v - 1);
      c.mcz(std::move(sites));
    }
  }
  c.permutation(std::move(table));
  return c;
}

}  // namespace

GateCircuit compile_hypergraph_circuit(const HypergraphPolynomial& poly, int n,
                                       const FeistelPermutation& perm) {
  check_qubit_count(n, "compile_hypergraph_circuit");
  if (n > 20) throw std::out_of_range("compile_hypergraph_circuit: n must be <= 20");
  if (perm.bits() != n) throw std::invalid_argument("compile_hypergraph_circuit: permutation width");
  std::vector<std::uint64_t> table(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = perm.forward(x);
  return compile_with_table(poly, n, std::move(table));
}

GateCircuit compile_subset_phase_circuit(const SubsetPhaseSpec& spec) {
  spec.validate();
  if (spec.n > 20) throw std::out_of_range("compile_subset_phase_circuit: n must be <= 20");
  const auto phases = resolve_phases(spec);
  const auto poly = HypergraphPolynomial::from_truth_table(spec.k, phases);
  GateCircuit c(spec.n);
  // The ANF drops the constant monomial; restore it as a global sign.
  if (phases[0]) c.single(Matrix2{-1.0, 0.0, 0.0, -1.0}, 0);
  if (spec.subset_kind == SubsetKind::PermutationPrefix) {
    return c.append(compile_hypergraph_circuit(poly, spec.n,
                                               FeistelPermutation(spec.n, spec.subset_seed)));
  }
  // Send index i to the i-th listed string, then fill the rest in order.
  const std::size_t dim = std::size_t{1} << spec.n;
  std::vector<std::uint64_t> table(dim);
  std::vector<bool> used(dim, false);
  for (std::size_t i = 0; i < spec.explicit_subset.size(); ++i) {
    table[i] = spec.explicit_subset[i];
    used[table[i]] = true;
  }
  std::uint64_t next = 0;
  for (std::size_t i = spec.explicit_subset.size(); i < dim; ++i) {
    while (used[next]) ++next;
    table[i] = next;
    used[next] = true;
  }
  return c.append(compile_with_table(poly, spec.n, std::move(table)));
}

std::string spec_to_json(const SubsetPhaseSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["fn_kind"] = to_string(spec.fn_kind);
  j["kwise_t"] = spec.kwise_t;
  j["fn_seed"] = spec.fn_seed;
  j["subset_kind"] = to_string(spec.subset_kind);
  j["subset_seed"] = spec.subset_seed;
  if (spec.subset_kind == SubsetKind::Explicit) j["explicit_subset"] = spec.explicit_subset;
  if (spec.truth_table) j["truth_table"] = *spec.truth_table;
  if (spec.hyperedges) j["hyperedges"] = *spec.hyperedges;
  return j.dump();
}

SubsetPhaseSpec spec_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SubsetPhaseSpec s;
  s.n = j.at("n").get<int>();
  s.k = j.at("k").get<int>();
  s.fn_kind = function_kind_from_string(j.value("fn_kind", std::string("kwise")));
  s.kwise_t = j.value("kwise_t", 8);
  s.fn_seed = j.value("fn_seed", std::uint64_t{0});
  s.subset_kind = subset_kind_from_string(
      j.value("subset_kind", std::string("prefix_image_of_permutation")));
  s.subset_seed = j.value("subset_seed", std::uint64_t{0});
  if (j.contains("explicit_subset")) {
    s.explicit_subset = j.at("explicit_subset").get<std::vector<std::uint64_t>>();
  }
  if (j.contains("truth_table")) {
    s.truth_table = j.at("truth_table").get<std::vector<std::uint8_t>>();
  }
  if (j.contains("hyperedges")) {
    s.hyperedges = j.at("hyperedges").get<std::vector<std::vector<int>>>();
  }
  s.validate();
  return s;
}

}  // namespace magiclab
