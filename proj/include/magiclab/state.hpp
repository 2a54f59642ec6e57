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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace magiclab {

using Complex = std::complex<double>;

/// Dense pure state on n qubits. Qubit j is bit j of the basis index, so
/// qubit 0 is the least significant bit.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);
  static StateVector plus(int n_qubits);
  /// (|0> + e^{i pi/4}|1>)/sqrt 2.
  static StateVector t_state();

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = 1e-9) const;
  StateVector& normalize();

  /// this (x) other, with `this` on the low qubits.
  StateVector tensor(const StateVector& other) const;

  Complex inner(const StateVector& other) const;  ///< <this|other>

  bool operator==(const StateVector&) const = default;

 private:
  int n_ = 0;
  std::vector<Complex> amps_;
};

/// Throws std::invalid_argument unless 1 <= n <= 30.
void check_qubit_count(int n, const char* where);

/// 2 sqrt(1 - |<a|b>|^2).
double trace_distance_pure(const StateVector& a, const StateVector& b);

/// Independent standard complex Gaussians, normalized.
StateVector haar_sample(int n, std::uint64_t seed);

/// Bipartition A|B given by the sites in A.
struct CutSpec {
  std::vector<int> subset_a;
};

void validate_cut(const CutSpec& cut, int n);

/// Renyi entanglement entropy in bits of the reduced state on A;
/// order 1 is von Neumann, order 2 is -log2 tr(rho_A^2).
double entanglement_entropy(const StateVector& state, const CutSpec& cut,
                            int order);

/// Every bipartition up to complement: the subsets of {0..n-1} that do not
/// contain qubit n-1, excluding the empty set.
std::vector<CutSpec> all_cuts(int n);

// Serialization. The binary layout is
//   "MLSV" | u32 version | u32 n | 2^n x (f64 re, f64 im), all little-endian.
inline constexpr std::uint32_t kStateFormatVersion = 1;

std::vector<std::uint8_t> encode_state(const StateVector& state);
StateVector decode_state(std::span<const std::uint8_t> bytes);
void write_state_file(const std::string& path, const StateVector& state);
StateVector read_state_file(const std::string& path);

/// {"format": "magiclab-state", "version": 1, "n": n, "amplitudes": [[re, im], ...]}
std::string state_to_json(const StateVector& state);
StateVector state_from_json(const std::string& text);

}  // namespace magiclab
