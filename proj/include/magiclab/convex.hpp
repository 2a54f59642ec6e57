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
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magiclab/catalog.hpp"
#include "magiclab/simplex.hpp"
#include "magiclab/state.hpp"
#include "magiclab/subset_phase.hpp"

namespace magiclab {

/// coefficient * |sigma><sigma| for a stabilizer state given by its nonzero
/// amplitudes.
struct StabilizerTerm {
  double coefficient = 0.0;
  std::vector<std::pair<std::uint64_t, Complex>> support;
};

struct ConvexCertificate {
  std::string measure;           ///< robustness, extent, dmax or fidelity
  double value_bits = 0.0;       ///< achieved value (an upper bound for extent)
  double lower_bound_bits = 0.0; ///< equals value_bits when solved exactly
  double l1_norm = 1.0;          ///< sum |c| of the decomposition
  /// catalog index -> coefficient
  std::map<std::size_t, Complex> coefficients;
  /// Decompositions not drawn from a catalog.
  std::vector<StabilizerTerm> terms;
  std::uint64_t term_count = 0;
  double residual = 0.0;
  int rounds = 0;

  std::string to_json() const;
};

/// Minimal l1 weight of a real combination of stabilizer projectors equal to
/// |psi><psi|, with the equality imposed in the Pauli basis. n = 4 needs
/// allow_large (a 256 x 73440 tableau).
ConvexCertificate robustness_lp(const StateVector& state, const StabilizerCatalog& catalog,
                                bool allow_large = false, const LpOptions& options = {});

/// Explicit decomposition of a subset phase state with l1 weight exactly |S|:
/// diagonal projectors plus +-(sigma+ - sigma-) on every pair of strings.
/// Terms are listed when |S| <= term_limit; the residual is always checked.
ConvexCertificate robustness_certificate_subset_phase(const SubsetPhaseSpec& spec,
                                                      std::size_t term_limit = 256);

/// -log2 max_sigma |<sigma|psi>|^2.
double stabilizer_fidelity(const StateVector& state, const StabilizerCatalog& catalog);

struct ExtentOptions {
  int initial_directions = 16;
  int max_rounds = 24;
  double target_gap = 1e-8;  ///< relative gap between the bounds on sum |c|
  LpOptions lp;
};

/// Thrown when the bounds do not meet within the allowed rounds.
class ExtentConvergenceError : public std::runtime_error {
 public:
  ExtentConvergenceError(double upper_bits, double lower_bits);
  double upper_bits;
  double lower_bits;
};

/// log2 min (sum |c_phi|)^2 over complex decompositions psi = sum c_phi phi.
/// Phases are restricted to a finite direction set refined by column
/// generation; the LP dual gives a lower bound.
ConvexCertificate stabilizer_extent(const StateVector& state, const StabilizerCatalog& catalog,
                                    const ExtentOptions& options = {});

/// For pure states D_max coincides with the extent.
double dmax_pure(const StateVector& state, const StabilizerCatalog& catalog,
                 const ExtentOptions& options = {});

}  // namespace magiclab
