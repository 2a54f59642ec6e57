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
#include <vector>

namespace magiclab {

/// Fixed irreducible modulus of GF(2^m), m in [4, 16], including the x^m term.
std::uint32_t irreducible_polynomial(int m);

/// Arithmetic in GF(2^m) with a polynomial basis.
class GF2m {
 public:
  explicit GF2m(int m);

  int degree() const { return m_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << m_; }

  static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

 private:
  int m_;
  std::uint32_t modulus_;
};

/// Degree-(t-1) polynomial over GF(2^m); the output bit is the low bit of
/// the field value, so any t distinct inputs give independent fair bits.
class KWiseFunction {
 public:
  KWiseFunction(int field_degree, std::vector<std::uint32_t> coefficients);

  int independence() const { return static_cast<int>(coeffs_.size()); }
  const GF2m& field() const { return field_; }
  const std::vector<std::uint32_t>& coefficients() const { return coeffs_; }

  std::uint32_t evaluate_field(std::uint32_t x) const;
  int operator()(std::uint64_t x) const;

 private:
  GF2m field_;
  std::vector<std::uint32_t> coeffs_;
};

/// Uniform member of the t-wise independent family on `domain_bits`-bit
/// inputs. The field degree is max(domain_bits, 4).
KWiseFunction sample_kwise_function(int domain_bits, int t, std::uint64_t seed);

}  // namespace magiclab
