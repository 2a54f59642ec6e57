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

#include "magiclab/catalog.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <stdexcept>

namespace magiclab {

std::uint64_t stabilizer_state_count(int n) {
  std::uint64_t c = std::uint64_t{1} << n;
  for (int k = 1; k <= n; ++k) c *= (std::uint64_t{1} << k) + 1;
  return c;
}

namespace {

using Codes = std::vector<std::uint8_t>;

// code <-> phase
Complex phase_of(std::uint8_t code) {
  switch (code) {
    case 1: return {1, 0};
    case 2: return {0, 1};
    case 3: return {-1, 0};
    case 4: return {0, -1};
    default: return {0, 0};
  }
}

// i^e as a code
std::uint8_t code_of_power(int e) { return static_cast<std::uint8_t>((e & 3) + 1); }

// All r x n reduced row echelon bases over GF(2), as lists of row bitmasks.
void rref_bases(int n, int r, std::vector<std::vector<std::uint32_t>>& out) {
  // choose pivot columns p_0 < ... < p_{r-1}; row i has a 1 at p_i, zeros at
  // other pivots and below p_i, free entries at non-pivot columns > p_i.
  std::vector<int> pivots(r);
  std::function<void(int, int)> pick = [&](int idx, int start) {
    if (idx == r) {
      std::vector<std::vector<int>> free_cols(r);
      std::uint32_t pivot_mask = 0;
      for (int p : pivots) pivot_mask |= 1U << p;
      int total_free = 0;
      for (int i = 0; i < r; ++i) {
        for (int c = pivots[i] + 1; c < n; ++c)
          if (!((pivot_mask >> c) & 1U)) free_cols[i].push_back(c);
        total_free += static_cast<int>(free_cols[i].size());
      }
      for (std::uint32_t fill = 0; fill < (1U << total_free); ++fill) {
        std::vector<std::uint32_t> rows(r);
        int bit = 0;
        for (int i = 0; i < r; ++i) {
          rows[i] = 1U << pivots[i];
          for (int c : free_cols[i]) {
            if ((fill >> bit) & 1U) rows[i] |= 1U << c;
            ++bit;
          }
        }
        out.push_back(std::move(rows));
      }
      return;
    }
    for (int p = start; p < n; ++p) {
      pivots[idx] = p;
      pick(idx + 1, p + 1);
    }
  };
  pick(0, 0);
}

Codes canonical_codes(const std::vector<Complex>& amps) {
  Codes codes(amps.size(), 0);
  Complex ref{0, 0};
  for (const auto& a : amps) {
    if (std::abs(a) > 1e-12) {
      ref = a / std::abs(a);
      break;
    }
  }
  for (std::size_t x = 0; x < amps.size(); ++x) {
    if (std::abs(amps[x]) < 1e-12) continue;
    const Complex p = amps[x] / std::abs(amps[x]) / ref;
    if (std::abs(p - Complex(1, 0)) < 1e-9) codes[x] = 1;
    else if (std::abs(p - Complex(0, 1)) < 1e-9) codes[x] = 2;
    else if (std::abs(p - Complex(-1, 0)) < 1e-9) codes[x] = 3;
    else codes[x] = 4;
  }
  return codes;
}

StateVector state_from_codes(int n, const Codes& codes) {
  std::size_t support = 0;
  for (auto c : codes) support += c != 0 ? 1 : 0;
  const double a = 1.0 / std::sqrt(static_cast<double>(support));
  std::vector<Complex> amps(codes.size());
  for (std::size_t x = 0; x < codes.size(); ++x) amps[x] = a * phase_of(codes[x]);
  return StateVector(n, std::move(amps));
}

}  // namespace

StabilizerCatalog enumerate_stabilizers(int n) {
  if (n < 1 || n > 4) {
    throw std::out_of_range("enumerate_stabilizers: n must be in [1, 4], got " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  std::set<Codes> unique;
  for (int r = 0; r <= n; ++r) {
    std::vector<std::vector<std::uint32_t>> bases;
    rref_bases(n, r, bases);
    for (const auto& rows : bases) {
      std::uint32_t pivot_mask = 0;
      for (auto row : rows) pivot_mask |= 1U << std::countr_zero(row);
      const int pairs = r * (r - 1) / 2;
      for (std::uint32_t offset = 0; offset < dim; ++offset) {
        if (offset & pivot_mask) continue;
        // linear part: one power of i per generator (4^r), quadratic part:
        // one sign per unordered generator pair.
        for (std::uint32_t lin = 0; lin < (1U << (2 * r)); ++lin) {
          for (std::uint32_t quad = 0; quad < (1U << pairs); ++quad) {
            Codes codes(dim, 0);
            for (std::uint32_t y = 0; y < (1U << r); ++y) {
              std::uint32_t x = offset;
              int e = 0;
              for (int i = 0; i < r; ++i) {
                if ((y >> i) & 1U) {
                  x ^= rows[i];
                  e += static_cast<int>((lin >> (2 * i)) & 3U);
                }
              }
              int bit = 0;
              for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j, ++bit)
                  if (((quad >> bit) & 1U) && ((y >> i) & 1U) && ((y >> j) & 1U)) e += 2;
              codes[x] = code_of_power(e);
            }
            // Canonicalize: divide by the phase of the first nonzero entry.
            std::uint8_t first = 0;
            for (auto c : codes)
              if (c) {
                first = c;
                break;
              }
            for (auto& c : codes)
              if (c) c = code_of_power((c - 1) - (first - 1));
            unique.insert(std::move(codes));
          }
        }
      }
    }
  }
  StabilizerCatalog cat;
  cat.n = n;
  cat.states.reserve(unique.size());
  for (const auto& codes : unique) cat.states.push_back(state_from_codes(n, codes));
  if (cat.count() != stabilizer_state_count(n)) {
    throw std::logic_error("enumerate_stabilizers: produced " + std::to_string(cat.count()) +
                           " states, expected " + std::to_string(stabilizer_state_count(n)));
  }
  return cat;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b.at(pos + i)} << (8 * i);
  return v;
}

}  // namespace

void write_catalog_cache(const std::string& path, const StabilizerCatalog& catalog) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write("MLSC", 4);
  put_u32(out, kCatalogFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(catalog.n));
  put_u32(out, static_cast<std::uint32_t>(catalog.count()));
  for (const auto& s : catalog.states) {
    const auto codes = canonical_codes({s.amplitudes().begin(), s.amplitudes().end()});
    out.write(reinterpret_cast<const char*>(codes.data()), static_cast<std::streamsize>(codes.size()));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

StabilizerCatalog read_catalog_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const std::vector<std::uint8_t> b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (b.size() < 16 || std::string(b.begin(), b.begin() + 4) != "MLSC") {
    throw std::runtime_error(path + ": not a stabilizer catalog");
  }
  if (get_u32(b, 4) != kCatalogFormatVersion) throw std::runtime_error(path + ": unsupported version");
  const int n = static_cast<int>(get_u32(b, 8));
  const std::uint32_t count = get_u32(b, 12);
  if (n < 1 || n > 4 || count != stabilizer_state_count(n)) {
    throw std::runtime_error(path + ": inconsistent header");
  }
  const std::size_t dim = std::size_t{1} << n;
  if (b.size() != 16 + count * dim) throw std::runtime_error(path + ": truncated");
  StabilizerCatalog cat;
  cat.n = n;
  for (std::uint32_t i = 0; i < count; ++i) {
    Codes codes(b.begin() + 16 + i * dim, b.begin() + 16 + (i + 1) * dim);
    for (auto c : codes)
      if (c > 4) throw std::runtime_error(path + ": bad amplitude code");
    cat.states.push_back(state_from_codes(n, codes));
  }
  return cat;
}

StabilizerCatalog load_or_build_catalog(int n, const std::string& cache_dir) {
  if (cache_dir.empty()) return enumerate_stabilizers(n);
  const auto path = std::filesystem::path(cache_dir) / ("stabilizers_n" + std::to_string(n) + ".bin");
  if (std::filesystem::exists(path)) {
    try {
      return read_catalog_cache(path.string());
    } catch (const std::exception&) {
      // stale or corrupt cache: rebuild below
    }
  }
  auto cat = enumerate_stabilizers(n);
  std::filesystem::create_directories(cache_dir);
  write_catalog_cache(path.string(), cat);
  return cat;
}

}  // namespace magiclab
