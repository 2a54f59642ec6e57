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

#include "magiclab/otoc.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "magiclab/entropy.hpp"

namespace magiclab {

void OtocSpec::validate() const {
  unitary.validate();
  if (pauli_pairs.empty()) throw std::invalid_argument("OtocSpec: no Pauli pairs");
  const int n = unitary.num_qubits();
  for (const auto& [p, q] : pauli_pairs) {
    for (const auto* op : {&p, &q}) {
      if (op->n != n) throw std::invalid_argument("OtocSpec: Pauli size does not match circuit");
      if (op->is_identity()) throw std::invalid_argument("OtocSpec: identity Pauli in correlator");
    }
  }
}

Complex otoc_value(const OtocSpec& spec) {
  spec.validate();
  const int n = spec.unitary.num_qubits();
  if (n > 10) throw std::out_of_range("otoc_value: n <= 10, got " + std::to_string(n));
  const GateCircuit inverse = spec.unitary.adjoint();
  const std::uint64_t d = std::uint64_t{1} << n;
  Complex trace = 0.0;
  for (std::uint64_t x = 0; x < d; ++x) {
    StateVector v = StateVector::basis(n, x);
    // rightmost factor first
    for (auto it = spec.pauli_pairs.rbegin(); it != spec.pauli_pairs.rend(); ++it) {
      v = apply_pauli(v, it->second);
      v = apply_circuit(v, spec.unitary);
      v = apply_pauli(v, it->first);
      v = apply_circuit(v, inverse);
    }
    trace += v[x];
  }
  return trace / static_cast<double>(d);
}

double averaged_otoc(const StateVector& state, int alpha) {
  if (alpha < 2) throw std::invalid_argument("averaged_otoc: alpha must be >= 2");
  const double d = static_cast<double>(state.dim());
  return swap_trick_value(state, alpha) / (d * d);
}

namespace {

using Mat = Eigen::MatrixXcd;

Mat conjugated_pauli_matrix(const GateCircuit& u, const GateCircuit& u_dag,
                            const PauliOperator& p) {
  const int n = u.num_qubits();
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Mat m(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    StateVector v = apply_circuit(StateVector::basis(n, static_cast<std::uint64_t>(x)), u);
    v = apply_pauli(v, p);
    v = apply_circuit(v, u_dag);
    for (Eigen::Index y = 0; y < d; ++y) m(y, x) = v[static_cast<std::uint64_t>(y)];
  }
  return m;
}

// Sum over Z strings of tr(prefix * Pt * Z_l * Pt * Z_{l+1} ...), depth levels left.
Complex sum_z_chains(const Mat& prefix, const Mat& pt, int levels) {
  const Eigen::Index d = pt.rows();
  const Mat base = prefix * pt;
  Complex total = 0.0;
  if (levels == 1) {
    // tr(base Z) = sum_x base(x, x) z(x)
    for (Eigen::Index z = 0; z < d; ++z)
      for (Eigen::Index x = 0; x < d; ++x)
        total += std::popcount(static_cast<std::uint64_t>(x & z)) & 1 ? -base(x, x) : base(x, x);
    return total;
  }
  Mat next(d, d);
  for (Eigen::Index z = 0; z < d; ++z) {
    for (Eigen::Index x = 0; x < d; ++x) {
      const double sign = std::popcount(static_cast<std::uint64_t>(x & z)) & 1 ? -1.0 : 1.0;
      next.col(x) = sign * base.col(x);
    }
    total += sum_z_chains(next, pt, levels - 1);
  }
  return total;
}

double direct_average(const GateCircuit& unitary, int alpha) {
  const int n = unitary.num_qubits();
  if (n > 4 || alpha != 2) {
    throw std::invalid_argument("averaged_otoc: direct averaging needs n <= 4 and alpha = 2");
  }
  const GateCircuit inverse = unitary.adjoint();
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t paulis = d * d;
  // per-Pauli partial sums, added in index order so the result does not
  // depend on the thread count
  std::vector<double> partial(paulis);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(paulis); ++idx) {
    const auto p = PauliOperator::from_index(n, static_cast<std::uint64_t>(idx));
    const Mat pt = conjugated_pauli_matrix(unitary, inverse, p);
    const Mat id = Mat::Identity(pt.rows(), pt.cols());
    partial[static_cast<std::size_t>(idx)] = sum_z_chains(id, pt, 2 * alpha).real();
  }
  double total = 0.0;
  for (double v : partial) total += v;
  const double dd = static_cast<double>(d);
  return total / (static_cast<double>(paulis) * std::pow(dd, 2 * alpha) * dd);
}

}  // namespace

double averaged_otoc(const GateCircuit& unitary, int alpha, OtocMethod method) {
  unitary.validate();
  if (alpha < 2) throw std::invalid_argument("averaged_otoc: alpha must be >= 2");
  if (method == OtocMethod::Direct) return direct_average(unitary, alpha);
  if (unitary.num_qubits() > 8) {
    throw std::out_of_range("averaged_otoc: circuit path supports n <= 8");
  }
  return averaged_otoc(apply_circuit(StateVector(unitary.num_qubits()), unitary), alpha);
}

std::vector<ScramblingRow> scrambling_ratio(const SubsetPhaseSpec& subset,
                                            const std::vector<int>& n_list, int alpha,
                                            const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("scrambling_ratio: no Haar seeds");
  std::vector<ScramblingRow> rows;
  for (int n : n_list) {
    if (n < 1 || n > 10) throw std::out_of_range("scrambling_ratio: n must be in [1, 10]");
    SubsetPhaseSpec spec = subset;
    spec.n = n;
    spec.validate();
    ScramblingRow row;
    row.n = n;
    const StateVector pm = apply_circuit(StateVector(n), compile_subset_phase_circuit(spec));
    row.subset_otoc = averaged_otoc(pm, alpha);
    row.subset_entropy = stabilizer_entropy(pm, alpha).value;

    double sum = 0.0, sum_sq = 0.0, m_sum = 0.0;
    for (auto seed : seeds) {
      const StateVector h = haar_sample(n, seed);
      const double c = averaged_otoc(h, alpha);
      sum += c;
      sum_sq += c * c;
      m_sum += stabilizer_entropy(h, alpha).value;
    }
    const double count = static_cast<double>(seeds.size());
    row.haar_samples = seeds.size();
    row.haar_otoc_mean = sum / count;
    const double var = seeds.size() > 1
                           ? std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0))
                           : 0.0;
    row.haar_otoc_stderr = std::sqrt(var / count);
    row.haar_entropy_mean = m_sum / count;
    row.ratio = row.subset_otoc / row.haar_otoc_mean;
    row.predicted_ratio =
        std::exp2((1.0 - alpha) * (row.subset_entropy - row.haar_entropy_mean));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace magiclab
