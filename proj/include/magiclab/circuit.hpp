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

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "magiclab/pauli.hpp"
#include "magiclab/rng.hpp"
#include "magiclab/state.hpp"

namespace magiclab {

/// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Complex, 4>;

Matrix2 matrix_h();
Matrix2 matrix_s();
Matrix2 matrix_sdg();
Matrix2 matrix_t();
Matrix2 matrix_x();
Matrix2 matrix_z();
Matrix2 adjoint(const Matrix2& u);
Matrix2 multiply(const Matrix2& a, const Matrix2& b);
bool is_unitary(const Matrix2& u, double tol = 1e-10);
/// Haar-distributed element of U(2).
Matrix2 haar_unitary_2x2(Rng& rng);

struct SingleQubitGate {
  Matrix2 u;
  int target = 0;
};

/// Flips the sign of every basis state whose bits on `sites` are all 1.
struct MultiControlledZ {
  std::vector<int> sites;
};

struct CliffordGate {
  enum class Kind { H, S, CNOT };
  Kind kind = Kind::H;
  int q0 = 0;  ///< target for H/S, control for CNOT
  int q1 = -1; ///< CNOT target
};

/// |x> -> |table[x]> on the whole register; table must be a bijection.
struct BasisPermutation {
  std::vector<std::uint64_t> table;
};

using Gate = std::variant<SingleQubitGate, MultiControlledZ, CliffordGate,
                          BasisPermutation>;

class GateCircuit {
 public:
  GateCircuit() = default;
  explicit GateCircuit(int n_qubits);

  int num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  GateCircuit& add(Gate g);
  GateCircuit& h(int q);
  GateCircuit& s(int q);
  GateCircuit& cnot(int control, int target);
  GateCircuit& cz(int a, int b);
  GateCircuit& mcz(std::vector<int> sites);
  GateCircuit& single(const Matrix2& u, int q);
  GateCircuit& permutation(std::vector<std::uint64_t> table);
  GateCircuit& append(const GateCircuit& other);

  /// Gates in reverse order, each inverted.
  GateCircuit adjoint() const;
  /// Same gates on a wider register; qubit q maps to `mapping[q]`.
  GateCircuit embedded(int n_total, const std::vector<int>& mapping) const;

  /// True if every gate is H, S, CNOT, a CZ, or a single-qubit Clifford.
  bool is_clifford() const;

  /// Throws std::out_of_range or std::invalid_argument on a bad record.
  void validate() const;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

void apply_gate(StateVector& state, const Gate& gate);
StateVector apply_circuit(const StateVector& state, const GateCircuit& circuit);

/// U P U^dagger for a Clifford circuit U. Throws std::invalid_argument on a
/// non-Clifford gate.
PauliOperator conjugate_pauli(const GateCircuit& circuit, const PauliOperator& p);

/// |Sp(2m, F2)| (fits in 64 bits for m <= 4).
std::uint64_t symplectic_group_order(int m);

/// Clifford whose symplectic part is element `index` of the canonical
/// enumeration of Sp(2m, F2), with no Pauli layer.
GateCircuit clifford_from_index(int m, std::uint64_t index);

/// Uniformly random m-qubit Clifford (modulo global phase), as H/S/CNOT gates.
GateCircuit random_clifford_circuit(int m, std::uint64_t seed);

/// `layers` rounds of Haar single-qubit gates on every qubit followed by a
/// CNOT chain 0->1->...->n-1.
GateCircuit random_brickwork_circuit(int n, int layers, std::uint64_t seed);

}  // namespace magiclab
