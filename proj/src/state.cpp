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

#include "magiclab/state.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include "json.hpp"
#include <numbers>
#include <stdexcept>

#include "magiclab/rng.hpp"

namespace magiclab {

void check_qubit_count(int n, const char* where) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument(std::string(where) +
                                ": qubit count must be in [1, 30], got " +
                                std::to_string(n));
  }
}

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits, "StateVector");
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_qubits, "StateVector");
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("StateVector: expected 2^" +
                                std::to_string(n_qubits) + " amplitudes, got " +
                                std::to_string(amps_.size()));
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("StateVector::basis: index");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::plus(int n_qubits) {
  StateVector s(n_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  std::fill(s.amps_.begin(), s.amps_.end(), Complex{a, 0.0});
  return s;
}

StateVector StateVector::t_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return StateVector(1, {Complex{r, 0.0}, std::polar(r, std::numbers::pi / 4)});
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector& StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw std::domain_error("StateVector::normalize: zero vector");
  for (auto& a : amps_) a /= nrm;
  return *this;
}

StateVector StateVector::tensor(const StateVector& other) const {
  std::vector<Complex> out(dim() * other.dim());
  for (std::size_t hi = 0; hi < other.dim(); ++hi) {
    for (std::size_t lo = 0; lo < dim(); ++lo) {
      out[(hi << n_) | lo] = amps_[lo] * other.amps_[hi];
    }
  }
  return StateVector(n_ + other.n_, std::move(out));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) throw std::invalid_argument("inner: qubit count mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    s += std::conj(amps_[i]) * other.amps_[i];
  }
  return s;
}

double trace_distance_pure(const StateVector& a, const StateVector& b) {
  const double overlap = std::norm(a.inner(b));
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap));
}

StateVector haar_sample(int n, std::uint64_t seed) {
  check_qubit_count(n, "haar_sample");
  if (n > 14) throw std::invalid_argument("haar_sample: n must be <= 14");
  Rng rng(mix64(seed));
  std::vector<Complex> amps(std::size_t{1} << n);
  for (auto& a : amps) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    a = Complex{re, im};
  }
  StateVector s(n, std::move(amps));
  s.normalize();
  return s;
}

void validate_cut(const CutSpec& cut, int n) {
  if (cut.subset_a.empty() || static_cast<int>(cut.subset_a.size()) >= n) {
    throw std::invalid_argument("CutSpec: A must be a nonempty proper subset");
  }
  std::uint64_t seen = 0;
  for (int q : cut.subset_a) {
    if (q < 0 || q >= n) throw std::out_of_range("CutSpec: site out of range");
    if (seen >> q & 1U) throw std::invalid_argument("CutSpec: repeated site");
    seen |= std::uint64_t{1} << q;
  }
}

namespace {

// Scatter the bits of `value` onto the positions listed in `sites`.
std::uint64_t deposit(std::uint64_t value, const std::vector<int>& sites) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < sites.size(); ++j) {
    out |= ((value >> j) & 1U) << sites[j];
  }
  return out;
}

}  // namespace

double entanglement_entropy(const StateVector& state, const CutSpec& cut,
                            int order) {
  const int n = state.num_qubits();
  validate_cut(cut, n);
  if (order != 1 && order != 2) {
    throw std::invalid_argument("entanglement_entropy: order must be 1 or 2");
  }
  std::vector<int> a_sites = cut.subset_a;
  std::sort(a_sites.begin(), a_sites.end());
  std::vector<int> b_sites;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(a_sites.begin(), a_sites.end(), q)) {
      b_sites.push_back(q);
    }
  }
  // The reduced spectra of A and B coincide; work on the smaller side.
  if (a_sites.size() > b_sites.size()) std::swap(a_sites, b_sites);
  const std::size_t da = std::size_t{1} << a_sites.size();
  const std::size_t db = std::size_t{1} << b_sites.size();

  Eigen::MatrixXcd m(da, db);
  for (std::size_t i = 0; i < da; ++i) {
    const std::uint64_t ia = deposit(i, a_sites);
    for (std::size_t j = 0; j < db; ++j) {
      m(i, j) = state[ia | deposit(j, b_sites)];
    }
  }
  const Eigen::MatrixXcd rho = m * m.adjoint();
  if (order == 2) {
    const double purity = rho.squaredNorm();
    return -std::log2(purity);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-12) s -= p * std::log2(p);
  }
  return s;
}

std::vector<CutSpec> all_cuts(int n) {
  std::vector<CutSpec> cuts;
  if (n < 2) return cuts;
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    CutSpec c;
    for (int q = 0; q < n - 1; ++q) {
      if (mask >> q & 1U) c.subset_a.push_back(q);
    }
    cuts.push_back(std::move(c));
  }
  return cuts;
}

namespace {

constexpr char kStateMagic[4] = {'M', 'L', 'S', 'V'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{in[pos + i]} << (8 * i);
  return v;
}

double get_f64(std::span<const std::uint8_t> in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{in[pos + i]} << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_state(const StateVector& state) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + 16 * state.dim());
  out.insert(out.end(), std::begin(kStateMagic), std::end(kStateMagic));
  put_u32(out, kStateFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(state.num_qubits()));
  for (const auto& a : state.amplitudes()) {
    put_f64(out, a.real());
    put_f64(out, a.imag());
  }
  return out;
}

StateVector decode_state(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !std::equal(std::begin(kStateMagic),
                                       std::end(kStateMagic), bytes.begin())) {
    throw std::runtime_error("decode_state: not a magiclab state file");
  }
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kStateFormatVersion) {
    throw std::runtime_error("decode_state: unsupported version " +
                             std::to_string(version));
  }
  const auto n = static_cast<int>(get_u32(bytes, 8));
  check_qubit_count(n, "decode_state");
  const std::size_t dim = std::size_t{1} << n;
  if (bytes.size() != 12 + 16 * dim) {
    throw std::runtime_error("decode_state: truncated payload");
  }
  std::vector<Complex> amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] = Complex{get_f64(bytes, 12 + 16 * i), get_f64(bytes, 20 + 16 * i)};
  }
  return StateVector(n, std::move(amps));
}

std::string state_to_json(const StateVector& state) {
  nlohmann::json j;
  j["format"] = "magiclab-state";
  j["version"] = kStateFormatVersion;
  j["n"] = state.num_qubits();
  auto arr = nlohmann::json::array();
  for (const auto& a : state.amplitudes()) arr.push_back({a.real(), a.imag()});
  j["amplitudes"] = std::move(arr);
  return j.dump();
}

StateVector state_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  std::vector<Complex> amps;
  for (const auto& pair : j.at("amplitudes")) {
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return StateVector(n, std::move(amps));
}

void write_state_file(const std::string& path, const StateVector& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (path.ends_with(".json")) {
    out << state_to_json(state) << '\n';
  } else {
    const auto bytes = encode_state(state);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

StateVector read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  auto first = std::find_if(bytes.begin(), bytes.end(),
                            [](std::uint8_t c) { return !std::isspace(c); });
  if (first != bytes.end() && *first == '{') {
    return state_from_json(std::string(bytes.begin(), bytes.end()));
  }
  return decode_state(bytes);
}

}  // namespace magiclab
