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
#include <string>
#include <string_view>
#include <vector>

#include "magiclab/state.hpp"

namespace magiclab {

/// n-qubit Pauli operator i^phase_exp * (x) sigma(x_j, z_j), where
/// sigma(0,0)=I, sigma(1,0)=X, sigma(0,1)=Z and sigma(1,1)=Y. With this
/// labelling the operator is Hermitian exactly when phase_exp is even, and
/// phase_exp = 0 is the canonical representative.
struct PauliOperator {
  int n = 1;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int phase_exp = 0;

  static PauliOperator identity(int n);
  /// Character i of `label` acts on qubit i. Accepts I, X, Y, Z with an
  /// optional leading sign "+", "-", "i", "-i".
  static PauliOperator from_string(std::string_view label);
  /// Inverse of index().
  static PauliOperator from_index(int n, std::uint64_t index);

  /// Position in the spectrum array: (x_mask << n) | z_mask.
  std::uint64_t index() const { return (x_mask << n) | z_mask; }
  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  bool is_hermitian() const { return (phase_exp & 1) == 0; }
  int weight() const;
  std::string to_string() const;

  bool operator==(const PauliOperator&) const = default;
};

PauliOperator pauli_multiply(const PauliOperator& p, const PauliOperator& q);
bool commutes(const PauliOperator& p, const PauliOperator& q);

/// P|psi>.
StateVector apply_pauli(const StateVector& state, const PauliOperator& p);

/// tr(P psi) for a Hermitian P.
double pauli_expectation(const StateVector& state, const PauliOperator& p);

/// Signed tr(P psi) for every canonical Pauli, indexed as in PauliSpectrum.
std::vector<double> pauli_expectation_vector(const StateVector& state);

/// Xi(P) = tr(P psi)^2 / d for all 4^n Paulis.
struct PauliSpectrum {
  int n = 0;
  std::vector<double> values;
  double purity = 1.0;

  double operator[](std::uint64_t index) const { return values[index]; }
  std::size_t size() const { return values.size(); }
  double dim() const { return static_cast<double>(std::uint64_t{1} << n); }
};

/// Largest n accepted by full_spectrum. Defaults to 14, lowered when the
/// MAGICLAB_MEM_CAP_MB environment variable caps the 8 * 4^n byte array.
int spectrum_max_qubits();

/// O(n 4^n): one Walsh-Hadamard transform per X mask.
PauliSpectrum full_spectrum(const StateVector& state);

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of 2.
void walsh_hadamard(std::vector<double>& v);
void walsh_hadamard(std::vector<Complex>& v);

}  // namespace magiclab
