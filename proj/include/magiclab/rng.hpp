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
#include <random>

namespace magiclab {

/// Engine used everywhere. mt19937_64 output is fixed by the standard, so
/// seeded runs replay identically across toolchains.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the independent stream owned by sample `index` of a run.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

Rng make_stream(std::uint64_t master_seed, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng);

/// Box-Muller; the standard distributions are implementation-defined, this
/// one is not.
double standard_normal(Rng& rng);

/// Uniform integer in [0, bound) by rejection. bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

}  // namespace magiclab
