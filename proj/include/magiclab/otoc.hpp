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
#include <utility>
#include <vector>

#include "magiclab/circuit.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/state.hpp"
#include "magiclab/subset_phase.hpp"

namespace magiclab {

/// Correlator (1/d) tr(P1~ Q1 P2~ Q2 ... Pk~ Qk) with Pi~ = U^dagger Pi U.
struct OtocSpec {
  GateCircuit unitary;
  std::vector<std::pair<PauliOperator, PauliOperator>> pauli_pairs;

  int half_order() const { return static_cast<int>(pauli_pairs.size()); }
  /// Throws std::invalid_argument on identity or mismatched operators.
  void validate() const;
};

/// n <= 10. Applies U and U^dagger column by column.
Complex otoc_value(const OtocSpec& spec);

enum class OtocMethod {
  Identity,  ///< from the Pauli spectrum of U|0...0>
  Direct,    ///< explicit average over Paulis and Z strings; n <= 4, alpha = 2
};

/// Average of the 4*alpha-point correlator (1/d) tr(P~ Z1 P~ Z2 ... P~ Z_{2 alpha})
/// over all Paulis P and Z strings Z_i.
double averaged_otoc(const GateCircuit& unitary, int alpha,
                     OtocMethod method = OtocMethod::Identity);

/// Same average for any U with U|0...0> = state.
double averaged_otoc(const StateVector& state, int alpha);

struct ScramblingRow {
  int n = 0;
  double subset_otoc = 0.0;
  double haar_otoc_mean = 0.0;
  double haar_otoc_stderr = 0.0;
  std::size_t haar_samples = 0;
  double ratio = 0.0;
  double subset_entropy = 0.0;
  double haar_entropy_mean = 0.0;
  /// 2^((1 - alpha)(M_subset - mean M_haar))
  double predicted_ratio = 0.0;
};

/// For each n, the averaged correlator of the circuit preparing `subset`
/// (with n replaced) over the mean for Haar states drawn with `seeds`.
std::vector<ScramblingRow> scrambling_ratio(const SubsetPhaseSpec& subset,
                                            const std::vector<int>& n_list, int alpha,
                                            const std::vector<std::uint64_t>& seeds);

}  // namespace magiclab
