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

#include "magiclab/state.hpp"

namespace magiclab {

/// Every pure n-qubit stabilizer state once, each normalized so its first
/// nonzero amplitude is real and positive, sorted by amplitude pattern.
struct StabilizerCatalog {
  int n = 0;
  std::vector<StateVector> states;

  std::size_t count() const { return states.size(); }
};

/// 2^n prod_{k=1..n} (2^k + 1).
std::uint64_t stabilizer_state_count(int n);

/// Enumerates affine subspaces with linear and quadratic phase forms.
/// n must be in [1, 4].
StabilizerCatalog enumerate_stabilizers(int n);

// Cache layout: "MLSC" | u32 version | u32 n | u32 count | count * 2^n
// amplitude codes (0 zero, 1 +1, 2 +i, 3 -1, 4 -i), little-endian.
inline constexpr std::uint32_t kCatalogFormatVersion = 1;

void write_catalog_cache(const std::string& path, const StabilizerCatalog& catalog);
StabilizerCatalog read_catalog_cache(const std::string& path);

/// Reads `<dir>/stabilizers_n<n>.bin` if present and valid, otherwise
/// enumerates and writes it. An empty dir disables caching.
StabilizerCatalog load_or_build_catalog(int n, const std::string& cache_dir);

}  // namespace magiclab
