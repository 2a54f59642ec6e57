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

#include "magiclab/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace magiclab {

std::string EntropyReport::to_json() const {
  nlohmann::json j{{"alpha", alpha}, {"value", value}, {"purity", purity}};
  if (alpha == 0.0) j["support_size"] = support_size;
  return j.dump();
}

namespace {

// S_2 of a pure state is zero; kept so the formula reads as stated for
// general purity.
double purity_term(const PauliSpectrum& s) { return -std::log2(s.purity); }

}  // namespace

EntropyReport m0_support(const PauliSpectrum& spectrum, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("m0_support: tol must be > 0");
  // Xi = tr^2 / d, so |tr| > tol  <=>  Xi * d > tol^2.
  const double threshold = tol * tol / spectrum.dim();
  std::uint64_t count = 0;
  for (double v : spectrum.values) count += v > threshold ? 1 : 0;
  EntropyReport r;
  r.alpha = 0.0;
  r.support_size = count;
  r.value = std::log2(static_cast<double>(count)) + purity_term(spectrum) - spectrum.n;
  r.purity = spectrum.purity;
  return r;
}

EntropyReport m0_support(const StateVector& state, double tol) {
  return m0_support(full_spectrum(state), tol);
}

EntropyReport stabilizer_entropy(const PauliSpectrum& spectrum, double alpha) {
  if (!(alpha >= 0)) throw std::invalid_argument("stabilizer_entropy: alpha must be >= 0");
  if (alpha == 0.0) return m0_support(spectrum);
  EntropyReport r;
  r.alpha = alpha;
  r.purity = spectrum.purity;
  if (alpha == 1.0) {
    double h = 0.0;
    for (double v : spectrum.values) {
      if (v >= 1e-15) h -= v * std::log2(v);
    }
    r.value = h + purity_term(spectrum) - spectrum.n;
    return r;
  }
  if (std::abs(alpha - 1.0) < 1e-9) {
    throw std::invalid_argument(
        "stabilizer_entropy: alpha within 1e-9 of 1; use alpha = 1 for the Shannon limit");
  }
  double moment = 0.0;
  if (alpha == std::floor(alpha) && alpha <= 8) {
    const int a = static_cast<int>(alpha);
    for (double v : spectrum.values) {
      double p = v;
      for (int i = 1; i < a; ++i) p *= v;
      moment += p;
    }
  } else {
    for (double v : spectrum.values) moment += std::pow(v, alpha);
  }
  r.value = std::log2(moment) / (1.0 - alpha) + purity_term(spectrum) - spectrum.n;
  return r;
}

EntropyReport stabilizer_entropy(const StateVector& state, double alpha) {
  return stabilizer_entropy(full_spectrum(state), alpha);
}

std::vector<EntropyReport> stabilizer_entropies(const PauliSpectrum& spectrum,
                                                const std::vector<double>& alphas) {
  std::vector<EntropyReport> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(stabilizer_entropy(spectrum, a));
  return out;
}

double swap_trick_value(const PauliSpectrum& spectrum, int alpha) {
  if (alpha < 2) throw std::invalid_argument("swap_trick_value: alpha must be an integer >= 2");
  const double d = spectrum.dim();
  double acc = 0.0;
  for (double v : spectrum.values) {
    const double t2 = v * d;  // tr(P psi)^2
    double p = t2;
    for (int i = 1; i < alpha; ++i) p *= t2;
    acc += p;
  }
  return acc / d;
}

double swap_trick_value(const StateVector& state, int alpha) {
  return swap_trick_value(full_spectrum(state), alpha);
}

namespace {

// Row-reduce 2n-bit vectors; returns the independent subset.
std::vector<std::uint64_t> gf2_basis(const std::vector<std::uint64_t>& vecs) {
  std::vector<std::uint64_t> reduced;  // kept with distinct leading bits
  std::vector<std::uint64_t> picked;
  for (auto v : vecs) {
    std::uint64_t w = v;
    for (auto r : reduced) w = std::min(w, w ^ r);
    if (w != 0) {
      reduced.push_back(w);
      std::sort(reduced.begin(), reduced.end(), std::greater<>());
      picked.push_back(v);
    }
  }
  return picked;
}

}  // namespace

StabilizerGroupReport stabilizer_group(const StateVector& state, double tol) {
  const int n = state.num_qubits();
  const auto tr = pauli_expectation_vector(state);
  std::map<std::uint64_t, int> members;  // index -> phase_exp (0 or 2)
  for (std::uint64_t i = 0; i < tr.size(); ++i) {
    if (std::abs(tr[i]) > 1.0 - tol) members[i] = tr[i] > 0 ? 0 : 2;
  }
  std::vector<std::uint64_t> indices;
  for (const auto& [idx, ph] : members) indices.push_back(idx);
  const auto basis = gf2_basis(indices);
  StabilizerGroupReport rep;
  for (auto idx : basis) {
    auto p = PauliOperator::from_index(n, idx);
    p.phase_exp = members.at(idx);
    rep.generators.push_back(p);
  }
  rep.order = members.size();
  const auto rank = static_cast<int>(basis.size());
  if (rep.order != (std::uint64_t{1} << rank)) {
    throw std::runtime_error("stabilizer_group: " + std::to_string(rep.order) +
                             " near-unit expectations do not form a group of rank " +
                             std::to_string(rank));
  }
  for (const auto& [idx, ph] : members) {
    auto e = PauliOperator::from_index(n, idx);
    e.phase_exp = ph;
    for (const auto& g : rep.generators) {
      if (!commutes(e, g)) throw std::runtime_error("stabilizer_group: non-commuting members");
      const auto prod = pauli_multiply(e, g);
      const auto it = members.find(prod.index());
      if (it == members.end() || it->second != prod.phase_exp) {
        throw std::runtime_error("stabilizer_group: set is not closed under multiplication");
      }
    }
  }
  rep.nullity = n - rank;
  return rep;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double fannes_rhs(double td, int n, double alpha) {
  if (td < 0.0 || td > 2.0) throw std::invalid_argument("fannes_rhs: td must be in [0, 2]");
  check_qubit_count(n, "fannes_rhs");
  const double d2 = std::ldexp(1.0, 2 * n);
  if (alpha == 1.0) {
    return td * std::log2(d2 - 1.0) + (td <= 0.5 ? binary_entropy(td) : 1.0);
  }
  if (alpha > 1.0) return d2 * alpha / (alpha - 1.0) * td;
  throw std::invalid_argument("fannes_rhs: alpha must be 1 or > 1");
}

}  // namespace magiclab
