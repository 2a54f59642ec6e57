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

#include "magiclab/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace magiclab {

Matrix2 matrix_h() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {Complex{r, 0}, Complex{r, 0}, Complex{r, 0}, Complex{-r, 0}};
}
Matrix2 matrix_s() { return {1.0, 0.0, 0.0, Complex{0, 1}}; }
Matrix2 matrix_sdg() { return {1.0, 0.0, 0.0, Complex{0, -1}}; }
Matrix2 matrix_t() {
  return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
}
Matrix2 matrix_x() { return {0.0, 1.0, 1.0, 0.0}; }
Matrix2 matrix_z() { return {1.0, 0.0, 0.0, -1.0}; }

Matrix2 adjoint(const Matrix2& u) {
  return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

bool is_unitary(const Matrix2& u, double tol) {
  const Matrix2 p = multiply(u, adjoint(u));
  return std::abs(p[0] - 1.0) <= tol && std::abs(p[1]) <= tol &&
         std::abs(p[2]) <= tol && std::abs(p[3] - 1.0) <= tol;
}

Matrix2 haar_unitary_2x2(Rng& rng) {
  // First column: normalized complex Gaussian; second column completes it,
  // times an independent uniform phase.
  Complex a{standard_normal(rng), standard_normal(rng)};
  Complex b{standard_normal(rng), standard_normal(rng)};
  const double nrm = std::sqrt(std::norm(a) + std::norm(b));
  a /= nrm;
  b /= nrm;
  const Complex ph = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
  return {a, -ph * std::conj(b), b, ph * std::conj(a)};
}

GateCircuit::GateCircuit(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits, "GateCircuit");
}

GateCircuit& GateCircuit::add(Gate g) {
  gates_.push_back(std::move(g));
  return *this;
}

GateCircuit& GateCircuit::h(int q) {
  return add(CliffordGate{CliffordGate::Kind::H, q, -1});
}
GateCircuit& GateCircuit::s(int q) {
  return add(CliffordGate{CliffordGate::Kind::S, q, -1});
}
GateCircuit& GateCircuit::cnot(int control, int target) {
  return add(CliffordGate{CliffordGate::Kind::CNOT, control, target});
}
GateCircuit& GateCircuit::cz(int a, int b) {
  return add(MultiControlledZ{{a, b}});
}
GateCircuit& GateCircuit::mcz(std::vector<int> sites) {
  return add(MultiControlledZ{std::move(sites)});
}
GateCircuit& GateCircuit::single(const Matrix2& u, int q) {
  return add(SingleQubitGate{u, q});
}
GateCircuit& GateCircuit::permutation(std::vector<std::uint64_t> table) {
  return add(BasisPermutation{std::move(table)});
}

GateCircuit& GateCircuit::append(const GateCircuit& other) {
  if (other.n_ != n_) {
    throw std::invalid_argument("GateCircuit::append: qubit count mismatch");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::uint64_t> invert_table(const std::vector<std::uint64_t>& t) {
  std::vector<std::uint64_t> inv(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) inv[t[x]] = x;
  return inv;
}

Matrix2 clifford_matrix(CliffordGate::Kind kind) {
  return kind == CliffordGate::Kind::H ? matrix_h() : matrix_s();
}

}  // namespace

GateCircuit GateCircuit::adjoint() const {
  GateCircuit out(n_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    std::visit(
        Overloaded{
            [&](const SingleQubitGate& g) {
              out.add(SingleQubitGate{magiclab::adjoint(g.u), g.target});
            },
            [&](const MultiControlledZ& g) { out.add(g); },
            [&](const CliffordGate& g) {
              if (g.kind == CliffordGate::Kind::S) {
                out.add(SingleQubitGate{matrix_sdg(), g.q0});
              } else {
                out.add(g);
              }
            },
            [&](const BasisPermutation& g) {
              out.add(BasisPermutation{invert_table(g.table)});
            }},
        *it);
  }
  return out;
}

GateCircuit GateCircuit::embedded(int n_total,
                                  const std::vector<int>& mapping) const {
  if (static_cast<int>(mapping.size()) != n_) {
    throw std::invalid_argument("GateCircuit::embedded: mapping size");
  }
  for (int q : mapping) {
    if (q < 0 || q >= n_total) {
      throw std::out_of_range("GateCircuit::embedded: mapped site out of range");
    }
  }
  GateCircuit out(n_total);
  for (const auto& gate : gates_) {
    std::visit(
        Overloaded{
            [&](const SingleQubitGate& g) {
              out.add(SingleQubitGate{g.u, mapping.at(g.target)});
            },
            [&](const MultiControlledZ& g) {
              std::vector<int> sites;
              for (int q : g.sites) sites.push_back(mapping.at(q));
              out.add(MultiControlledZ{std::move(sites)});
            },
            [&](const CliffordGate& g) {
              out.add(CliffordGate{g.kind, mapping.at(g.q0),
                                   g.q1 < 0 ? -1 : mapping.at(g.q1)});
            },
            [&](const BasisPermutation& g) {
              const std::uint64_t dim = std::uint64_t{1} << n_total;
              std::uint64_t sub_mask = 0;
              for (int q : mapping) sub_mask |= std::uint64_t{1} << q;
              std::vector<std::uint64_t> table(dim);
              for (std::uint64_t y = 0; y < dim; ++y) {
                std::uint64_t x = 0;
                for (int j = 0; j < n_; ++j) x |= ((y >> mapping[j]) & 1U) << j;
                const std::uint64_t img = g.table.at(x);
                std::uint64_t z = y & ~sub_mask;
                for (int j = 0; j < n_; ++j) z |= ((img >> j) & 1U) << mapping[j];
                table[y] = z;
              }
              out.add(BasisPermutation{std::move(table)});
            }},
        gate);
  }
  return out;
}

namespace {

void check_site(int q, int n, const char* what) {
  if (q < 0 || q >= n) {
    throw std::out_of_range(std::string(what) + ": site " + std::to_string(q) +
                            " out of range for " + std::to_string(n) + " qubits");
  }
}

// Image of the one-qubit Pauli `label` (1=X, 2=Y, 3=Z) under u . P . u^dagger,
// as (label, sign), or label 0 when the image is not a signed Pauli.
std::pair<int, int> conjugate_one_qubit(const Matrix2& u, int label) {
  static const Matrix2 kPaulis[4] = {
      {1.0, 0.0, 0.0, 1.0},
      {0.0, 1.0, 1.0, 0.0},
      {0.0, Complex{0, -1}, Complex{0, 1}, 0.0},
      {1.0, 0.0, 0.0, -1.0}};
  const Matrix2 m = multiply(multiply(u, kPaulis[label]), adjoint(u));
  for (int cand = 1; cand <= 3; ++cand) {
    for (int sign : {1, -1}) {
      bool match = true;
      for (int e = 0; e < 4 && match; ++e) {
        match = std::abs(m[e] - static_cast<double>(sign) * kPaulis[cand][e]) < 1e-9;
      }
      if (match) return {cand, sign};
    }
  }
  return {0, 0};
}

bool is_clifford_matrix(const Matrix2& u) {
  return conjugate_one_qubit(u, 1).first != 0 &&
         conjugate_one_qubit(u, 3).first != 0;
}

void conjugate_single(PauliOperator& p, const Matrix2& u, int q) {
  const bool x = (p.x_mask >> q) & 1U;
  const bool z = (p.z_mask >> q) & 1U;
  if (!x && !z) return;
  const int label = x ? (z ? 2 : 1) : 3;
  const auto [img, sign] = conjugate_one_qubit(u, label);
  if (img == 0) {
    throw std::invalid_argument("conjugate_pauli: non-Clifford single-qubit gate");
  }
  const std::uint64_t bit = std::uint64_t{1} << q;
  p.x_mask &= ~bit;
  p.z_mask &= ~bit;
  if (img == 1 || img == 2) p.x_mask |= bit;
  if (img == 2 || img == 3) p.z_mask |= bit;
  if (sign < 0) p.phase_exp = (p.phase_exp + 2) & 3;
}

void conjugate_cnot(PauliOperator& p, int c, int t) {
  const unsigned xc = (p.x_mask >> c) & 1U;
  const unsigned zc = (p.z_mask >> c) & 1U;
  const unsigned xt = (p.x_mask >> t) & 1U;
  const unsigned zt = (p.z_mask >> t) & 1U;
  if (xc & zt & (xt ^ zc ^ 1U)) p.phase_exp = (p.phase_exp + 2) & 3;
  p.x_mask ^= std::uint64_t{xc} << t;
  p.z_mask ^= std::uint64_t{zt} << c;
}

}  // namespace

bool GateCircuit::is_clifford() const {
  for (const auto& gate : gates_) {
    const bool ok = std::visit(
        Overloaded{
            [](const SingleQubitGate& g) { return is_clifford_matrix(g.u); },
            [](const MultiControlledZ& g) { return g.sites.size() == 2; },
            [](const CliffordGate&) { return true; },
            [](const BasisPermutation&) { return false; }},
        gate);
    if (!ok) return false;
  }
  return true;
}

void GateCircuit::validate() const {
  const int n = n_;
  for (const auto& gate : gates_) {
    std::visit(
        Overloaded{
            [n](const SingleQubitGate& g) {
              check_site(g.target, n, "SingleQubitGate");
              if (!is_unitary(g.u)) {
                throw std::invalid_argument("SingleQubitGate: matrix is not unitary");
              }
            },
            [n](const MultiControlledZ& g) {
              if (g.sites.size() < 2) {
                throw std::invalid_argument("MultiControlledZ: needs at least 2 sites");
              }
              std::uint64_t seen = 0;
              for (int q : g.sites) {
                check_site(q, n, "MultiControlledZ");
                if ((seen >> q) & 1U) {
                  throw std::invalid_argument("MultiControlledZ: repeated site");
                }
                seen |= std::uint64_t{1} << q;
              }
            },
            [n](const CliffordGate& g) {
              check_site(g.q0, n, "CliffordGate");
              if (g.kind == CliffordGate::Kind::CNOT) {
                check_site(g.q1, n, "CNOT");
                if (g.q0 == g.q1) {
                  throw std::invalid_argument("CNOT: control equals target");
                }
              }
            },
            [n](const BasisPermutation& g) {
              const std::uint64_t dim = std::uint64_t{1} << n;
              if (g.table.size() != dim) {
                throw std::invalid_argument("BasisPermutation: table size");
              }
              std::vector<bool> hit(dim, false);
              for (auto y : g.table) {
                if (y >= dim || hit[y]) {
                  throw std::invalid_argument("BasisPermutation: not a bijection");
                }
                hit[y] = true;
              }
            }},
        gate);
  }
}

namespace {

void apply_matrix(StateVector& state, const Matrix2& u, int q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (i & bit) continue;
    const Complex a = state[i];
    const Complex b = state[i | bit];
    state[i] = u[0] * a + u[1] * b;
    state[i | bit] = u[2] * a + u[3] * b;
  }
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate) {
  const int n = state.num_qubits();
  std::visit(
      Overloaded{
          [&](const SingleQubitGate& g) {
            check_site(g.target, n, "SingleQubitGate");
            apply_matrix(state, g.u, g.target);
          },
          [&](const MultiControlledZ& g) {
            std::uint64_t mask = 0;
            for (int q : g.sites) {
              check_site(q, n, "MultiControlledZ");
              mask |= std::uint64_t{1} << q;
            }
            for (std::uint64_t i = 0; i < state.dim(); ++i) {
              if ((i & mask) == mask) state[i] = -state[i];
            }
          },
          [&](const CliffordGate& g) {
            check_site(g.q0, n, "CliffordGate");
            if (g.kind != CliffordGate::Kind::CNOT) {
              apply_matrix(state, clifford_matrix(g.kind), g.q0);
              return;
            }
            check_site(g.q1, n, "CNOT");
            const std::uint64_t c = std::uint64_t{1} << g.q0;
            const std::uint64_t t = std::uint64_t{1} << g.q1;
            for (std::uint64_t i = 0; i < state.dim(); ++i) {
              if ((i & c) && !(i & t)) std::swap(state[i], state[i | t]);
            }
          },
          [&](const BasisPermutation& g) {
            if (g.table.size() != state.dim()) {
              throw std::invalid_argument("BasisPermutation: table size");
            }
            std::vector<Complex> out(state.dim());
            for (std::uint64_t x = 0; x < state.dim(); ++x) out[g.table[x]] = state[x];
            std::copy(out.begin(), out.end(), state.amplitudes().begin());
          }},
      gate);
}

StateVector apply_circuit(const StateVector& state, const GateCircuit& circuit) {
  if (circuit.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("apply_circuit: circuit acts on " +
                                std::to_string(circuit.num_qubits()) +
                                " qubits, state has " +
                                std::to_string(state.num_qubits()));
  }
  StateVector out = state;
  for (const auto& g : circuit.gates()) apply_gate(out, g);
  return out;
}

PauliOperator conjugate_pauli(const GateCircuit& circuit, const PauliOperator& p) {
  if (p.n != circuit.num_qubits()) {
    throw std::invalid_argument("conjugate_pauli: qubit count mismatch");
  }
  PauliOperator out = p;
  for (const auto& gate : circuit.gates()) {
    std::visit(
        Overloaded{
            [&](const SingleQubitGate& g) { conjugate_single(out, g.u, g.target); },
            [&](const MultiControlledZ& g) {
              if (g.sites.size() != 2) {
                throw std::invalid_argument(
                    "conjugate_pauli: multi-controlled Z on more than 2 sites is "
                    "not Clifford");
              }
              const Matrix2 h = matrix_h();
              conjugate_single(out, h, g.sites[1]);
              conjugate_cnot(out, g.sites[0], g.sites[1]);
              conjugate_single(out, h, g.sites[1]);
            },
            [&](const CliffordGate& g) {
              if (g.kind == CliffordGate::Kind::CNOT) {
                conjugate_cnot(out, g.q0, g.q1);
              } else {
                conjugate_single(out, clifford_matrix(g.kind), g.q0);
              }
            },
            [&](const BasisPermutation&) {
              throw std::invalid_argument(
                  "conjugate_pauli: basis permutation is not supported");
            }},
        gate);
  }
  return out;
}

// Canonical symplectic sampling (Koenig & Smolin, J. Math. Phys. 55, 122202).
// Vectors use an interleaved layout: bit 2j is the X part of local qubit j,
// bit 2j+1 the Z part.
namespace {

using SymVec = std::uint64_t;

constexpr SymVec kEven = 0x5555555555555555ULL;

int sym_inner(SymVec v, SymVec w) {
  const SymVec a = (v & kEven) & ((w >> 1) & kEven);
  const SymVec b = (w & kEven) & ((v >> 1) & kEven);
  return (std::popcount(a) + std::popcount(b)) & 1;
}

SymVec transvect(SymVec k, SymVec v) { return sym_inner(k, v) ? v ^ k : v; }

unsigned pair_bits(SymVec v, int i) { return (v >> (2 * i)) & 3U; }

// h1, h2 with y = Z_h2 Z_h1 x.
std::pair<SymVec, SymVec> find_transvection(SymVec x, SymVec y, int m) {
  if (x == y) return {0, 0};
  if (sym_inner(x, y) == 1) return {x ^ y, 0};
  for (int i = 0; i < m; ++i) {
    if (pair_bits(x, i) != 0 && pair_bits(y, i) != 0) {
      unsigned zp = pair_bits(x, i) ^ pair_bits(y, i);
      if (zp == 0) {
        const unsigned xp = pair_bits(x, i);
        zp = 2U;
        if ((xp & 1U) != (xp >> 1)) zp |= 1U;
      }
      const SymVec z = SymVec{zp} << (2 * i);
      return {x ^ z, z ^ y};
    }
  }
  SymVec z = 0;
  for (int i = 0; i < m; ++i) {
    if (pair_bits(x, i) != 0 && pair_bits(y, i) == 0) {
      const unsigned xp = pair_bits(x, i);
      const unsigned zp = ((xp & 1U) == (xp >> 1)) ? 2U : (((xp & 1U) << 1) | (xp >> 1));
      z |= SymVec{zp} << (2 * i);
      break;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (pair_bits(x, i) == 0 && pair_bits(y, i) != 0) {
      const unsigned yp = pair_bits(y, i);
      const unsigned zp = ((yp & 1U) == (yp >> 1)) ? 2U : (((yp & 1U) << 1) | (yp >> 1));
      z |= SymVec{zp} << (2 * i);
      break;
    }
  }
  return {x ^ z, z ^ y};
}

// exp(-i pi/4 P_h) up to phase, on local qubits offset.. of the circuit.
void emit_transvection(GateCircuit& c, SymVec h, int m, int offset) {
  if (h == 0) return;
  std::vector<int> support;
  std::vector<unsigned> kind;
  for (int j = 0; j < m; ++j) {
    const unsigned p = pair_bits(h, j);
    if (p != 0) {
      support.push_back(offset + j);
      kind.push_back(p);
    }
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (kind[i] == 1U) {
      c.h(support[i]);
    } else if (kind[i] == 3U) {
      c.s(support[i]).s(support[i]).s(support[i]).h(support[i]);
    }
  }
  const int last = support.back();
  for (std::size_t i = 0; i + 1 < support.size(); ++i) c.cnot(support[i], last);
  c.s(last);
  for (std::size_t i = support.size() - 1; i-- > 0;) c.cnot(support[i], last);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (kind[i] == 1U) {
      c.h(support[i]);
    } else if (kind[i] == 3U) {
      c.h(support[i]).s(support[i]);
    }
  }
}

// One level of the recursion acting on local qubits offset..offset+m-1.
// `choose(m)` returns (k, bits) with 1 <= k < 4^m and bits < 2^(2m-1).
void emit_symplectic(GateCircuit& c, int m, int offset,
                     const std::function<std::pair<SymVec, SymVec>(int)>& choose) {
  const auto [k, bits] = choose(m);
  SymVec f1 = k;
  const auto [t0, t1] = find_transvection(SymVec{1}, f1, m);
  const SymVec eprime = SymVec{1} | ((bits >> 1) << 2);
  SymVec h0 = transvect(t1, transvect(t0, eprime));
  if (bits & 1U) f1 = 0;
  if (m > 1) emit_symplectic(c, m - 1, offset + 1, choose);
  emit_transvection(c, t0, m, offset);
  emit_transvection(c, t1, m, offset);
  emit_transvection(c, h0, m, offset);
  emit_transvection(c, f1, m, offset);
}

}  // namespace

std::uint64_t symplectic_group_order(int m) {
  if (m < 1 || m > 4) throw std::out_of_range("symplectic_group_order: m in [1, 4]");
  std::uint64_t order = std::uint64_t{1} << (m * m);
  for (int j = 1; j <= m; ++j) order *= (std::uint64_t{1} << (2 * j)) - 1;
  return order;
}

GateCircuit clifford_from_index(int m, std::uint64_t index) {
  if (index >= symplectic_group_order(m)) {
    throw std::out_of_range("clifford_from_index: index");
  }
  GateCircuit c(m);
  std::uint64_t rest = index;
  emit_symplectic(c, m, 0, [&rest](int level) {
    const std::uint64_t s = (std::uint64_t{1} << (2 * level)) - 1;
    const SymVec k = rest % s + 1;
    rest /= s;
    const std::uint64_t nb = std::uint64_t{1} << (2 * level - 1);
    const SymVec bits = rest % nb;
    rest /= nb;
    return std::pair{k, bits};
  });
  return c;
}

GateCircuit random_clifford_circuit(int m, std::uint64_t seed) {
  check_qubit_count(m, "random_clifford_circuit");
  Rng rng(mix64(seed ^ 0xc1f0c1f0c1f0c1f0ULL));
  GateCircuit c(m);
  emit_symplectic(c, m, 0, [&rng](int level) {
    const std::uint64_t s = (std::uint64_t{1} << (2 * level)) - 1;
    const SymVec k = 1 + uniform_below(rng, s);
    const SymVec bits = uniform_below(rng, std::uint64_t{1} << (2 * level - 1));
    return std::pair{k, bits};
  });
  // Random Pauli layer fixes the signs.
  for (int q = 0; q < m; ++q) {
    const auto r = uniform_below(rng, 4);
    if (r & 1U) c.h(q).s(q).s(q).h(q);  // X
    if (r & 2U) c.s(q).s(q);            // Z
  }
  return c;
}

GateCircuit random_brickwork_circuit(int n, int layers, std::uint64_t seed) {
  check_qubit_count(n, "random_brickwork_circuit");
  if (layers < 0) throw std::invalid_argument("random_brickwork_circuit: negative depth");
  Rng rng(mix64(seed ^ 0xb41c4b41c4b41c4bULL));
  GateCircuit c(n);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) c.single(haar_unitary_2x2(rng), q);
    for (int q = 0; q + 1 < n; ++q) c.cnot(q, q + 1);
  }
  return c;
}

}  // namespace magiclab
