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

#include "magiclab/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace magiclab {

namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

Complex i_power(int e) {
  switch (e & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_same_n(const PauliOperator& p, int n, const char* where) {
  if (p.n != n) {
    throw std::invalid_argument(std::string(where) + ": Pauli acts on " +
                                std::to_string(p.n) + " qubits, state has " +
                                std::to_string(n));
  }
}

}  // namespace

PauliOperator PauliOperator::identity(int n) {
  check_qubit_count(n, "PauliOperator");
  return PauliOperator{n, 0, 0, 0};
}

PauliOperator PauliOperator::from_string(std::string_view label) {
  int phase = 0;
  if (label.starts_with("+")) label.remove_prefix(1);
  if (label.starts_with("-")) {
    phase += 2;
    label.remove_prefix(1);
  }
  if (label.starts_with("i")) {
    phase += 1;
    label.remove_prefix(1);
  }
  const int n = static_cast<int>(label.size());
  check_qubit_count(n, "PauliOperator::from_string");
  PauliOperator p{n, 0, 0, phase & 3};
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (label[q]) {
      case 'I': break;
      case 'X': p.x_mask |= bit; break;
      case 'Z': p.z_mask |= bit; break;
      case 'Y': p.x_mask |= bit; p.z_mask |= bit; break;
      default:
        throw std::invalid_argument("PauliOperator::from_string: bad character '" +
                                    std::string(1, label[q]) + "'");
    }
  }
  return p;
}

PauliOperator PauliOperator::from_index(int n, std::uint64_t index) {
  const std::uint64_t low = (std::uint64_t{1} << n) - 1;
  return PauliOperator{n, (index >> n) & low, index & low, 0};
}

int PauliOperator::weight() const { return popcount(x_mask | z_mask); }

std::string PauliOperator::to_string() const {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string s = kPrefix[phase_exp & 3];
  for (int q = 0; q < n; ++q) {
    const bool x = (x_mask >> q) & 1U;
    const bool z = (z_mask >> q) & 1U;
    s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

PauliOperator pauli_multiply(const PauliOperator& p, const PauliOperator& q) {
  if (p.n != q.n) throw std::invalid_argument("pauli_multiply: qubit count mismatch");
  PauliOperator r{p.n, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, 0};
  const int e = p.phase_exp + q.phase_exp + popcount(p.x_mask & p.z_mask) +
                popcount(q.x_mask & q.z_mask) + 2 * popcount(p.z_mask & q.x_mask) -
                popcount(r.x_mask & r.z_mask);
  r.phase_exp = ((e % 4) + 4) % 4;
  return r;
}

bool commutes(const PauliOperator& p, const PauliOperator& q) {
  if (p.n != q.n) throw std::invalid_argument("commutes: qubit count mismatch");
  return popcount((p.x_mask & q.z_mask) ^ (p.z_mask & q.x_mask)) % 2 == 0;
}

StateVector apply_pauli(const StateVector& state, const PauliOperator& p) {
  check_same_n(p, state.num_qubits(), "apply_pauli");
  std::vector<Complex> out(state.dim());
  const Complex base = i_power(p.phase_exp + popcount(p.x_mask & p.z_mask));
  for (std::uint64_t x = 0; x < state.dim(); ++x) {
    const double sign = popcount(p.z_mask & x) & 1 ? -1.0 : 1.0;
    out[x ^ p.x_mask] = base * sign * state[x];
  }
  return StateVector(state.num_qubits(), std::move(out));
}

double pauli_expectation(const StateVector& state, const PauliOperator& p) {
  check_same_n(p, state.num_qubits(), "pauli_expectation");
  if (!p.is_hermitian()) {
    throw std::invalid_argument("pauli_expectation: operator " + p.to_string() +
                                " is not Hermitian");
  }
  Complex acc{0.0, 0.0};
  for (std::uint64_t x = 0; x < state.dim(); ++x) {
    const Complex term = std::conj(state[x ^ p.x_mask]) * state[x];
    acc += (popcount(p.z_mask & x) & 1) ? -term : term;
  }
  return (i_power(p.phase_exp + popcount(p.x_mask & p.z_mask)) * acc).real();
}

void walsh_hadamard(std::vector<double>& v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

void walsh_hadamard(std::vector<Complex>& v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex a = v[j];
        const Complex b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

int spectrum_max_qubits() {
  int cap = 14;
  if (const char* env = std::getenv("MAGICLAB_MEM_CAP_MB")) {
    const double mb = std::atof(env);
    if (mb > 0) {
      int fit = 0;
      while (fit < 14 && 8.0 * std::pow(4.0, fit + 1) <= mb * 1024.0 * 1024.0) ++fit;
      cap = std::max(1, fit);
    }
  }
  return cap;
}

namespace {

bool is_real_state(const StateVector& state) {
  for (const auto& a : state.amplitudes()) {
    if (a.imag() != 0.0) return false;
  }
  return true;
}

// Calls sink(a, b, signed expectation) over every Pauli, slice by slice.
template <typename Sink>
void for_each_expectation(const StateVector& state, Sink&& sink) {
  const auto dim = static_cast<std::int64_t>(state.dim());
  if (is_real_state(state)) {
    // Real amplitudes: c_a is real and Y-type entries carry the i^{|a&b|} factor.
#pragma omp parallel
    {
      std::vector<double> buf(dim);
#pragma omp for schedule(static)
      for (std::int64_t a = 0; a < dim; ++a) {
        for (std::int64_t x = 0; x < dim; ++x) {
          buf[x] = state[x ^ a].real() * state[x].real();
        }
        walsh_hadamard(buf);
        for (std::int64_t b = 0; b < dim; ++b) {
          const int ab = popcount(static_cast<std::uint64_t>(a & b)) & 3;
          const double t = (ab == 0) ? buf[b] : (ab == 2 ? -buf[b] : 0.0);
          sink(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), t);
        }
      }
    }
    return;
  }
#pragma omp parallel
  {
    std::vector<Complex> buf(dim);
#pragma omp for schedule(static)
    for (std::int64_t a = 0; a < dim; ++a) {
      for (std::int64_t x = 0; x < dim; ++x) {
        buf[x] = std::conj(state[x ^ a]) * state[x];
      }
      walsh_hadamard(buf);
      for (std::int64_t b = 0; b < dim; ++b) {
        const int ab = popcount(static_cast<std::uint64_t>(a & b));
        sink(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
             (i_power(ab) * buf[b]).real());
      }
    }
  }
}

void check_spectrum_input(const StateVector& state, const char* where) {
  if (!state.is_normalized(1e-9)) {
    throw std::invalid_argument(std::string(where) +
                                ": state is not normalized (norm^2 = " +
                                std::to_string(state.norm_squared()) + ")");
  }
  const int cap = spectrum_max_qubits();
  if (state.num_qubits() > cap) {
    throw std::length_error(
        std::string(where) + ": n = " + std::to_string(state.num_qubits()) +
        " exceeds the spectrum limit of " + std::to_string(cap) +
        " qubits (memory bound: 8 * 4^n bytes; raise MAGICLAB_MEM_CAP_MB)");
  }
}

}  // namespace

std::vector<double> pauli_expectation_vector(const StateVector& state) {
  check_spectrum_input(state, "pauli_expectation_vector");
  const int n = state.num_qubits();
  std::vector<double> out(std::size_t{1} << (2 * n));
  for_each_expectation(state, [&](std::uint64_t a, std::uint64_t b, double t) {
    out[(a << n) | b] = t;
  });
  return out;
}

PauliSpectrum full_spectrum(const StateVector& state) {
  check_spectrum_input(state, "full_spectrum");
  const int n = state.num_qubits();
  PauliSpectrum spec;
  spec.n = n;
  spec.values.resize(std::size_t{1} << (2 * n));
  const double inv_d = 1.0 / static_cast<double>(state.dim());
  for_each_expectation(state, [&](std::uint64_t a, std::uint64_t b, double t) {
    spec.values[(a << n) | b] = t * t * inv_d;
  });
  spec.purity = 1.0;
  return spec;
}

}  // namespace magiclab
