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

#include "magiclab/convex.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "magiclab/pauli.hpp"

namespace magiclab {

std::string ConvexCertificate::to_json() const {
  nlohmann::json j;
  j["measure"] = measure;
  j["value_bits"] = value_bits;
  j["lower_bound_bits"] = lower_bound_bits;
  j["l1_norm"] = l1_norm;
  j["residual"] = residual;
  j["rounds"] = rounds;
  j["term_count"] = term_count;
  auto coeffs = nlohmann::json::array();
  for (const auto& [idx, c] : coefficients) coeffs.push_back({idx, c.real(), c.imag()});
  j["coefficients"] = std::move(coeffs);
  return j.dump();
}

namespace {

void check_catalog(const StateVector& state, const StabilizerCatalog& catalog, const char* where) {
  if (catalog.n != state.num_qubits()) {
    throw std::invalid_argument(std::string(where) + ": catalog is for " +
                                std::to_string(catalog.n) + " qubits, state has " +
                                std::to_string(state.num_qubits()));
  }
}

}  // namespace

ConvexCertificate robustness_lp(const StateVector& state, const StabilizerCatalog& catalog,
                                bool allow_large, const LpOptions& options) {
  check_catalog(state, catalog, "robustness_lp");
  if (catalog.n > 3 && !allow_large) {
    throw std::invalid_argument("robustness_lp: n = 4 needs allow_large (slow, ~300 MB tableau)");
  }
  if (catalog.n > 3) {
    std::cerr << "warning: robustness_lp at n = " << catalog.n
              << " builds a 256 x 147136 tableau; expect minutes of runtime\n";
  }
  const auto rows = static_cast<Eigen::Index>(std::size_t{1} << (2 * catalog.n));
  const auto cols = static_cast<Eigen::Index>(catalog.count());
  // A(P, i) = tr(P sigma_i), an integer in {-1, 0, 1}.
  Eigen::MatrixXd A(rows, 2 * cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    const auto tr = pauli_expectation_vector(catalog.states[i]);
    for (Eigen::Index p = 0; p < rows; ++p) {
      const double v = std::round(tr[p]);
      A(p, i) = v;
      A(p, cols + i) = -v;
    }
  }
  const auto target = pauli_expectation_vector(state);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(target.data(), rows);
  const Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * cols);
  const auto res = solve_lp(A, b, c, options);
  if (res.status != LpResult::Status::Optimal) {
    throw std::logic_error(std::string("robustness_lp: LP ended as ") + to_string(res.status) +
                           "; stabilizer projectors should span the Hermitian matrices");
  }
  ConvexCertificate cert;
  cert.measure = "robustness";
  Eigen::VectorXd coeff(cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    coeff(i) = res.x(i) - res.x(cols + i);
    if (coeff(i) != 0.0) cert.coefficients[static_cast<std::size_t>(i)] = coeff(i);
  }
  cert.l1_norm = coeff.lpNorm<1>();
  cert.value_bits = std::log2(cert.l1_norm);
  cert.lower_bound_bits = std::log2(std::max(res.dual.dot(b), 1e-300));
  cert.residual = (A.leftCols(cols) * coeff - b).lpNorm<Eigen::Infinity>();
  cert.term_count = cert.coefficients.size();
  cert.rounds = 1;
  return cert;
}

ConvexCertificate robustness_certificate_subset_phase(const SubsetPhaseSpec& spec,
                                                      std::size_t term_limit) {
  spec.validate();
  const auto subset = resolve_subset(spec);
  const auto phases = resolve_phases(spec);
  const std::size_t size = subset.size();
  const double inv = 1.0 / static_cast<double>(size);
  const double r = 1.0 / std::numbers::sqrt2;

  ConvexCertificate cert;
  cert.measure = "robustness";
  const bool keep = size <= term_limit;
  double l1 = 0.0;
  double residual = 0.0;
  std::vector<double> diag(size, 0.0);

  for (std::size_t i = 0; i < size; ++i) {
    // inv * |x_i><x_i|
    diag[i] += inv;
    l1 += inv;
    if (keep) cert.terms.push_back({inv, {{subset[i], Complex(1.0)}}});
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      const double s = (phases[i] ^ phases[j]) ? -1.0 : 1.0;
      // s * inv * (sigma+ - sigma-), sigma+- = |+-><+-|, |+-> = (|x_i> +- |x_j>)/sqrt2
      const double c_plus = s * inv;
      const double c_minus = -s * inv;
      const Complex ap_i = r, ap_j = r, am_i = r, am_j = -r;
      const Complex off = c_plus * ap_i * std::conj(ap_j) + c_minus * am_i * std::conj(am_j);
      diag[i] += c_plus * std::norm(ap_i) + c_minus * std::norm(am_i);
      diag[j] += c_plus * std::norm(ap_j) + c_minus * std::norm(am_j);
      const double target = s * inv;  // psi_i psi_j^*
      residual = std::max(residual, std::abs(off - target));
      l1 += std::abs(c_plus) + std::abs(c_minus);
      if (keep) {
        cert.terms.push_back({c_plus, {{subset[i], ap_i}, {subset[j], ap_j}}});
        cert.terms.push_back({c_minus, {{subset[i], am_i}, {subset[j], am_j}}});
      }
    }
  }
  for (std::size_t i = 0; i < size; ++i) residual = std::max(residual, std::abs(diag[i] - inv));
  cert.term_count = size + size * (size - 1);
  cert.l1_norm = l1;
  cert.value_bits = std::log2(l1);
  cert.lower_bound_bits = 0.0;
  cert.residual = residual;
  cert.rounds = 0;
  return cert;
}

double stabilizer_fidelity(const StateVector& state, const StabilizerCatalog& catalog) {
  check_catalog(state, catalog, "stabilizer_fidelity");
  double best = 0.0;
  for (const auto& s : catalog.states) best = std::max(best, std::norm(s.inner(state)));
  return -std::log2(best);
}

ExtentConvergenceError::ExtentConvergenceError(double upper, double lower)
    : std::runtime_error("stabilizer_extent: bounds did not converge (upper " +
                         std::to_string(upper) + " bits, lower " + std::to_string(lower) +
                         " bits)"),
      upper_bits(upper),
      lower_bits(lower) {}

ConvexCertificate stabilizer_extent(const StateVector& state, const StabilizerCatalog& catalog,
                                    const ExtentOptions& options) {
  check_catalog(state, catalog, "stabilizer_extent");
  const auto d = static_cast<Eigen::Index>(state.dim());
  const std::size_t count = catalog.count();
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<std::vector<double>> directions(count);
  for (auto& dirs : directions)
    for (int t = 0; t < options.initial_directions; ++t)
      dirs.push_back(two_pi * t / options.initial_directions);

  Eigen::VectorXd b(2 * d);
  for (Eigen::Index x = 0; x < d; ++x) {
    b(x) = state[x].real();
    b(d + x) = state[x].imag();
  }

  double best_upper = std::numeric_limits<double>::infinity();
  // y = psi is dual feasible after scaling: sum |c| >= 1 / max_j |<phi_j|psi>|.
  double best_lower = 0.0;
  for (const auto& s : catalog.states) best_lower = std::max(best_lower, std::abs(s.inner(state)));
  best_lower = 1.0 / best_lower;
  std::vector<Complex> best_c;
  for (int round = 0; round <= options.max_rounds; ++round) {
    std::vector<std::pair<std::size_t, double>> cols;
    for (std::size_t j = 0; j < count; ++j)
      for (double th : directions[j]) cols.emplace_back(j, th);
    Eigen::MatrixXd A(2 * d, static_cast<Eigen::Index>(cols.size()));
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      const auto& [j, th] = cols[k];
      const Complex ph = std::polar(1.0, th);
      for (Eigen::Index x = 0; x < d; ++x) {
        const Complex v = ph * catalog.states[j][x];
        A(x, k) = v.real();
        A(d + x, k) = v.imag();
      }
    }
    const auto res = solve_lp(A, b, Eigen::VectorXd::Ones(A.cols()), options.lp);
    if (res.status != LpResult::Status::Optimal) {
      throw std::logic_error(std::string("stabilizer_extent: LP ended as ") + to_string(res.status));
    }
    std::vector<Complex> c(count, 0.0);
    for (Eigen::Index k = 0; k < A.cols(); ++k)
      if (res.x(k) != 0.0) c[cols[k].first] += res.x(k) * std::polar(1.0, cols[k].second);
    double upper = 0.0;
    for (const auto& v : c) upper += std::abs(v);

    // y_hat from the dual; any y_hat gives Re<y|psi> / max_j |<y|phi_j>| <= optimum.
    std::vector<Complex> y(d);
    for (Eigen::Index x = 0; x < d; ++x) y[x] = Complex(res.dual(x), res.dual(d + x));
    std::vector<Complex> g(count);
    double gmax = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index x = 0; x < d; ++x) acc += std::conj(y[x]) * catalog.states[j][x];
      g[j] = acc;
      gmax = std::max(gmax, std::abs(acc));
    }
    Complex yp = 0.0;
    for (Eigen::Index x = 0; x < d; ++x) yp += std::conj(y[x]) * state[x];
    const double lower = gmax > 0 ? yp.real() / gmax : 0.0;

    if (upper < best_upper) {
      best_upper = upper;
      best_c = c;
    }
    best_lower = std::max(best_lower, lower);
    if ((best_upper - best_lower) <= options.target_gap * best_upper) {
      ConvexCertificate cert;
      cert.measure = "extent";
      cert.l1_norm = best_upper;
      cert.value_bits = 2.0 * std::log2(best_upper);
      cert.lower_bound_bits = 2.0 * std::log2(best_lower);
      std::vector<Complex> recon(d, 0.0);
      for (std::size_t j = 0; j < count; ++j) {
        if (std::abs(best_c[j]) == 0.0) continue;
        cert.coefficients[j] = best_c[j];
        for (Eigen::Index x = 0; x < d; ++x) recon[x] += best_c[j] * catalog.states[j][x];
      }
      for (Eigen::Index x = 0; x < d; ++x)
        cert.residual = std::max(cert.residual, std::abs(recon[x] - state[x]));
      cert.term_count = cert.coefficients.size();
      cert.rounds = round;
      return cert;
    }
    // Refine: the most violated phase for every violated dual constraint,
    // plus a finer fan around the phases in use.
    const double spread = two_pi / options.initial_directions / std::pow(2.0, round + 1);
    for (std::size_t j = 0; j < count; ++j) {
      if (std::abs(g[j]) > 1.0 + 1e-9) directions[j].push_back(-std::arg(g[j]));
      if (std::abs(c[j]) > 0.0) {
        const double a = std::arg(c[j]);
        directions[j].push_back(a - spread);
        directions[j].push_back(a + spread);
      }
    }
  }
  throw ExtentConvergenceError(2.0 * std::log2(best_upper), 2.0 * std::log2(best_lower));
}

double dmax_pure(const StateVector& state, const StabilizerCatalog& catalog,
                 const ExtentOptions& options) {
  return stabilizer_extent(state, catalog, options).value_bits;
}

}  // namespace magiclab
