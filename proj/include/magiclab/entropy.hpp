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
#include <vector>

#include "magiclab/pauli.hpp"
#include "magiclab/state.hpp"

namespace magiclab {

/// Stabilizer Renyi entropy in bits. support_size is set for alpha = 0.
struct EntropyReport {
  double alpha = 2.0;
  double value = 0.0;
  std::uint64_t support_size = 0;
  double purity = 1.0;

  std::string to_json() const;
};

/// M_alpha = S_alpha(Xi) + S_2(psi) - n. alpha = 0 and alpha = 1 use the
/// support-size and Shannon limits; any other alpha within 1e-9 of 1 is
/// rejected.
EntropyReport stabilizer_entropy(const StateVector& state, double alpha);
EntropyReport stabilizer_entropy(const PauliSpectrum& spectrum, double alpha);
std::vector<EntropyReport> stabilizer_entropies(const PauliSpectrum& spectrum,
                                                const std::vector<double>& alphas);

inline constexpr double kSupportTolerance = 1e-8;

/// Counts Paulis with |tr(P psi)| > tol.
EntropyReport m0_support(const StateVector& state, double tol = kSupportTolerance);
EntropyReport m0_support(const PauliSpectrum& spectrum, double tol = kSupportTolerance);

/// tr(Pi^(2 alpha) psi^(x) 2 alpha) = (1/d) sum_P tr(P psi)^(2 alpha), from the
/// spectrum. Equals 2^((1 - alpha) M_alpha).
double swap_trick_value(const StateVector& state, int alpha);
double swap_trick_value(const PauliSpectrum& spectrum, int alpha);

struct StabilizerGroupReport {
  std::vector<PauliOperator> generators;  ///< signed: phase_exp 2 means -P
  std::uint64_t order = 1;
  int nullity = 0;
};

/// Paulis with |tr(P psi)| > 1 - tol, checked for closure.
StabilizerGroupReport stabilizer_group(const StateVector& state, double tol = 1e-6);

/// Binary entropy in bits.
double binary_entropy(double p);

/// Right-hand side of the continuity bound |M_alpha(psi) - M_alpha(phi)| <= rhs
/// for trace distance td, alpha = 1 or alpha > 1.
double fannes_rhs(double td, int n, double alpha);

}  // namespace magiclab
