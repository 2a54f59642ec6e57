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

// Brute-force reference implementations shared by the unit tests. These
// deliberately go through dense matrices so they share no code paths with
// the library.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "magiclab/state.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using C = std::complex<double>;

inline Mat pauli_1q(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli_1q");
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Character q of `label` acts on qubit q, which is bit q of the index.
inline Mat dense_pauli(const std::string& label) {
  Mat m = Mat::Identity(1, 1);
  for (char c : label) m = kron(pauli_1q(c), m);
  return m;
}

/// Label of the Pauli with masks (x, z) on n qubits.
inline std::string label_of(int n, std::uint64_t x, std::uint64_t z) {
  std::string s;
  for (int q = 0; q < n; ++q) {
    const bool xb = (x >> q) & 1U, zb = (z >> q) & 1U;
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

inline Vec to_eigen(const magiclab::StateVector& s) {
  Vec v(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) v(i) = s[i];
  return v;
}

inline magiclab::StateVector from_eigen(int n, const Vec& v) {
  std::vector<C> a(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) a[i] = v(i);
  return magiclab::StateVector(n, std::move(a));
}

inline double expectation(const magiclab::StateVector& s, const std::string& label) {
  const Vec v = to_eigen(s);
  return (v.adjoint() * dense_pauli(label) * v)(0, 0).real();
}

inline magiclab::StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<C> a(std::size_t{1} << n);
  for (auto& x : a) x = C(g(rng), g(rng));
  magiclab::StateVector s(n, std::move(a));
  s.normalize();
  return s;
}

inline magiclab::StateVector random_real_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<C> a(std::size_t{1} << n);
  for (auto& x : a) x = C(g(rng), 0.0);
  magiclab::StateVector s(n, std::move(a));
  s.normalize();
  return s;
}

/// Dense single-qubit gate on qubit q of n.
inline Mat embed_1q(const Mat& u, int q, int n) {
  Mat m = Mat::Identity(1, 1);
  for (int j = 0; j < n; ++j) m = kron(j == q ? u : Mat::Identity(2, 2), m);
  return m;
}

/// Dense CNOT built from its truth table.
inline Mat dense_cnot(int c, int t, int n) {
  const std::size_t d = std::size_t{1} << n;
  Mat m = Mat::Zero(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    const std::size_t y = ((x >> c) & 1U) ? x ^ (std::size_t{1} << t) : x;
    m(y, x) = 1.0;
  }
  return m;
}

/// Shannon-free M_alpha straight from the definition, via dense Paulis.
inline double stabilizer_renyi(const magiclab::StateVector& s, double alpha) {
  const int n = s.num_qubits();
  const double d = static_cast<double>(s.dim());
  double acc = 0.0;
  for (std::uint64_t x = 0; x < s.dim(); ++x)
    for (std::uint64_t z = 0; z < s.dim(); ++z) {
      const double t = expectation(s, label_of(n, x, z));
      acc += std::pow(t * t, alpha);
    }
  return std::log2(acc / d) / (1.0 - alpha);
}

}  // namespace oracle
