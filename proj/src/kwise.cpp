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

#include "magiclab/kwise.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "magiclab/rng.hpp"

namespace magiclab {

std::uint32_t irreducible_polynomial(int m) {
  // Low-weight irreducible polynomials (trinomials where one exists,
  // otherwise pentanomials); x^8 uses the AES modulus.
  static constexpr std::uint32_t kTable[] = {
      0x13,    // x^4 + x + 1
      0x25,    // x^5 + x^2 + 1
      0x43,    // x^6 + x + 1
      0x83,    // x^7 + x + 1
      0x11B,   // x^8 + x^4 + x^3 + x + 1
      0x211,   // x^9 + x^4 + 1
      0x409,   // x^10 + x^3 + 1
      0x805,   // x^11 + x^2 + 1
      0x1053,  // x^12 + x^6 + x^4 + x + 1
      0x201B,  // x^13 + x^4 + x^3 + x + 1
      0x4443,  // x^14 + x^10 + x^6 + x + 1
      0x8003,  // x^15 + x + 1
      0x1100B, // x^16 + x^12 + x^3 + x + 1
  };
  if (m < 4 || m > 16) {
    throw std::out_of_range("irreducible_polynomial: m must be in [4, 16], got " +
                            std::to_string(m));
  }
  return kTable[m - 4];
}

GF2m::GF2m(int m) : m_(m), modulus_(irreducible_polynomial(m)) {}

std::uint32_t GF2m::mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0;
  const std::uint32_t top = std::uint32_t{1} << m_;
  while (b) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus_;
  }
  return r;
}

KWiseFunction::KWiseFunction(int field_degree, std::vector<std::uint32_t> coefficients)
    : field_(field_degree), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("KWiseFunction: t must be >= 1");
  for (auto c : coeffs_) {
    if (c >= field_.order()) throw std::invalid_argument("KWiseFunction: coefficient");
  }
}

std::uint32_t KWiseFunction::evaluate_field(std::uint32_t x) const {
  if (x >= field_.order()) throw std::out_of_range("KWiseFunction: input");
  std::uint32_t acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    acc = field_.mul(acc, x) ^ *it;
  }
  return acc;
}

int KWiseFunction::operator()(std::uint64_t x) const {
  return static_cast<int>(evaluate_field(static_cast<std::uint32_t>(x)) & 1U);
}

KWiseFunction sample_kwise_function(int domain_bits, int t, std::uint64_t seed) {
  if (t < 1) throw std::invalid_argument("sample_kwise_function: t must be >= 1");
  if (domain_bits < 1 || domain_bits > 16) {
    throw std::out_of_range("sample_kwise_function: domain bits must be in [1, 16]");
  }
  const int m = std::max(domain_bits, 4);
  Rng rng(mix64(seed ^ 0x6b776973655f6b77ULL));
  std::vector<std::uint32_t> coeffs(t);
  for (auto& c : coeffs) c = static_cast<std::uint32_t>(uniform_below(rng, 1U << m));
  return KWiseFunction(m, std::move(coeffs));
}

}  // namespace magiclab
