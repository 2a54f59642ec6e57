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

#include "magiclab/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "magiclab/catalog.hpp"
#include "magiclab/circuit.hpp"
#include "magiclab/convex.hpp"
#include "magiclab/entropy.hpp"
#include "magiclab/otoc.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/rng.hpp"
#include "magiclab/subset_phase.hpp"

namespace magiclab {

namespace {

// Runs body(i) for i < count across the OpenMP team; rows are pre-indexed so
// the worker count never changes the output. The first exception is rethrown.
template <class Body>
void for_each_sample(std::size_t count, Body body) {
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::string alpha_name(double a) {
  std::ostringstream os;
  os << "m_" << a;
  return os.str();
}

SubsetPhaseSpec kwise_spec(int n, int k, Rng& rng) {
  SubsetPhaseSpec spec;
  spec.n = n;
  spec.k = k;
  spec.fn_kind = FunctionKind::KWise;
  spec.kwise_t = 8;
  spec.fn_seed = rng();
  spec.subset_kind = SubsetKind::PermutationPrefix;
  spec.subset_seed = rng();
  return spec;
}

SubsetPhaseSpec truth_table_spec(int n, int k, Rng& rng) {
  SubsetPhaseSpec spec = kwise_spec(n, k, rng);
  spec.fn_kind = FunctionKind::TruthTable;
  return spec;
}

CutSpec random_cut(const std::vector<int>& sites, std::size_t size, Rng& rng) {
  std::vector<int> pool = sites;
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return CutSpec{pool};
}

std::vector<int> range_sites(int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

double mean_cut_entropy(const StateVector& s, const std::vector<CutSpec>& cuts, int order) {
  double acc = 0.0;
  for (const auto& c : cuts) acc += entanglement_entropy(s, c, order);
  return acc / static_cast<double>(cuts.size());
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

ExperimentManifest make_manifest(std::string name, std::uint64_t seed, int n, int k,
                                 std::vector<double> alpha, std::size_t samples,
                                 nlohmann::json params = nlohmann::json::object()) {
  ExperimentManifest m;
  m.experiment = std::move(name);
  m.master_seed = seed;
  m.n = n;
  m.k = k;
  m.alpha = std::move(alpha);
  m.sample_count = samples;
  m.parameters = std::move(params);
  return m;
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double min_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

}  // namespace

ResultTable haar_baseline(int n, std::size_t samples, const std::vector<double>& alphas,
                          std::uint64_t seed) {
  require(n >= 1 && n <= 12, "haar_baseline: n must be in [1, 12]");
  require(samples >= 1, "haar_baseline: need at least one sample");
  require(!alphas.empty(), "haar_baseline: empty alpha list");
  std::vector<std::string> cols{"sample"};
  for (double a : alphas) cols.push_back(alpha_name(a));
  ResultTable table(cols);
  table.manifest = make_manifest("haar_baseline", seed, n, 0, alphas, samples);
  table.resize(samples);
  for_each_sample(samples, [&](std::size_t i) {
    const auto psi = haar_sample(n, stream_seed(seed, i));
    const auto reports = stabilizer_entropies(full_spectrum(psi), alphas);
    std::vector<Cell> row{static_cast<std::int64_t>(i)};
    for (const auto& r : reports) row.emplace_back(r.value);
    table.set_row(i, std::move(row));
  });
  for (double a : alphas) {
    if (a < 2.0) continue;
    const auto v = table.column(alpha_name(a));
    const double expected = a == 2.0 ? n - 2.0 : n / (a - 1.0);
    table.check("mean " + alpha_name(a) + " >= Haar value - 0.2", mean(v) >= expected - 0.2,
                mean(v), expected - 0.2);
    const double floor = n / (4.0 * a);
    table.check("min " + alpha_name(a) + " >= n / (4 alpha)", min_of(v) >= floor, min_of(v),
                floor);
  }
  return table;
}

ResultTable phase_state_average(int n, std::size_t samples, std::uint64_t seed) {
  require(n >= 4 && n <= 10, "phase_state_average: n must be in [4, 10]");
  require(samples >= 2, "phase_state_average: need at least two samples");
  ResultTable table({"sample", "m_2", "exp_neg_m2"});
  table.manifest = make_manifest("phase_state_average", seed, n, n, {2.0}, samples);
  table.resize(samples);
  for_each_sample(samples, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto psi = build_subset_phase_state(truth_table_spec(n, n, rng));
    const double m2 = stabilizer_entropy(psi, 2).value;
    table.set_row(i, {static_cast<std::int64_t>(i), m2, std::exp2(-m2)});
  });
  const auto v = table.column("exp_neg_m2");
  const double bound = 20.0 / std::exp2(n) + 3.0 * standard_error(v);
  table.check("mean 2^-M2 <= 20/2^n + 3 stderr", mean(v) <= bound, mean(v), bound);
  return table;
}

ResultTable subset_tightness(int n, const std::vector<int>& k_list, std::size_t samples,
                             std::uint64_t seed) {
  require(n >= 1 && n <= 14, "subset_tightness: n must be in [1, 14]");
  require(!k_list.empty() && samples >= 1, "subset_tightness: empty grid");
  for (int k : k_list) require(k >= 1 && k <= n && k <= 16, "subset_tightness: k out of range");
  ResultTable table({"k", "sample", "m_0", "m_2"});
  nlohmann::json params{{"k_list", k_list}};
  table.manifest = make_manifest("subset_tightness", seed, n, k_list.front(), {0.0, 2.0}, samples,
                                 params);
  table.resize(k_list.size() * samples);
  for_each_sample(k_list.size() * samples, [&](std::size_t idx) {
    const int k = k_list[idx / samples];
    const std::size_t i = idx % samples;
    Rng rng = make_stream(stream_seed(seed, static_cast<std::uint64_t>(k)), i);
    const auto spectrum = full_spectrum(build_subset_phase_state(kwise_spec(n, k, rng)));
    table.set_row(idx, {std::int64_t{k}, static_cast<std::int64_t>(i),
                        m0_support(spectrum).value, stabilizer_entropy(spectrum, 2).value});
  });
  const auto ks = table.column("k");
  const auto m0 = table.column("m_0");
  const auto m2 = table.column("m_2");
  for (int k : k_list) {
    std::vector<double> a, b;
    for (std::size_t r = 0; r < ks.size(); ++r) {
      if (ks[r] != k) continue;
      a.push_back(m0[r]);
      b.push_back(m2[r]);
    }
    const std::string tag = " [k=" + std::to_string(k) + "]";
    table.check("max M0 <= 2k" + tag, max_of(a) <= 2.0 * k + 1e-9, max_of(a), 2.0 * k);
    const double low = static_cast<double>(std::count_if(b.begin(), b.end(),
                                                         [&](double x) { return x <= k / 4.0; })) /
                       static_cast<double>(b.size());
    table.check("Pr[M2 <= k/4] <= 2^(-k/4)" + tag, low <= std::exp2(-k / 4.0), low,
                std::exp2(-k / 4.0));
    const double ratio = median(b) / k;
    table.check("median M2 / k in [1/4, 2]" + tag, ratio >= 0.25 && ratio <= 2.0, ratio, 2.0,
                "lower limit 0.25");
  }
  return table;
}

double hadamard_acceptance(const StateVector& state, int alpha) {
  require(alpha >= 3 && alpha % 2 == 1, "hadamard_acceptance: alpha must be odd and >= 3");
  return 0.5 * (1.0 + swap_trick_value(state, alpha));
}

ResultTable distinguisher_gap(int n, int k, int alpha, std::size_t samples, std::uint64_t seed) {
  require(alpha >= 3 && alpha % 2 == 1, "distinguisher_gap: alpha must be odd and >= 3");
  require(n >= 1 && n <= 12 && k >= 1 && k <= n, "distinguisher_gap: bad n or k");
  require(samples >= 2, "distinguisher_gap: need at least two samples");
  ResultTable table({"ensemble", "sample", "acceptance"});
  table.manifest = make_manifest("distinguisher_gap", seed, n, k, {double(alpha)}, samples);
  table.resize(2 * samples);
  for_each_sample(2 * samples, [&](std::size_t idx) {
    const bool haar = idx >= samples;
    const std::size_t i = idx % samples;
    Rng rng = make_stream(stream_seed(seed, haar ? 1 : 0), i);
    const StateVector psi = haar ? haar_sample(n, rng()) : build_subset_phase_state(kwise_spec(n, k, rng));
    table.set_row(idx, {std::string(haar ? "haar" : "subset"), static_cast<std::int64_t>(i),
                        hadamard_acceptance(psi, alpha)});
  });
  const auto p = table.column("acceptance");
  const std::vector<double> ps(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(samples));
  const std::vector<double> ph(p.begin() + static_cast<std::ptrdiff_t>(samples), p.end());
  const double gap = mean(ps) - mean(ph);
  const double se = std::hypot(standard_error(ps), standard_error(ph));
  if (2 * k <= n) {
    table.check("gap > 3 stderr", gap > 3.0 * se, gap, 3.0 * se);
  }
  const double haar_bound = 0.5 * (1.0 + std::exp2(-2.0 * n / 8.0)) + 3.0 * standard_error(ph);
  table.check("Haar mean acceptance <= (1 + 2^(-n/4))/2 + 3 stderr", mean(ph) <= haar_bound,
              mean(ph), haar_bound);
  return table;
}

ResultTable tune_entanglement(int n, int k, int f, std::size_t samples, std::uint64_t seed) {
  require(n >= 2 && n <= 14 && k >= 1 && k <= n, "tune_entanglement: bad n or k");
  require(f >= 0 && 2 * f <= n, "tune_entanglement: need 0 <= f <= n/2");
  require(samples >= 1, "tune_entanglement: need samples");
  ResultTable table({"sample", "m2_before", "m2_after", "m2_delta", "ent_before", "ent_after",
                     "ent_increase"});
  table.manifest = make_manifest("tune_entanglement", seed, n, k, {2.0}, samples, {{"f", f}});
  table.resize(samples);
  for_each_sample(samples, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto psi = build_subset_phase_state(kwise_spec(n, k, rng));
    StateVector out = psi;
    std::vector<CutSpec> cuts;
    if (f > 0) {
      const auto cliff = random_clifford_circuit(2 * f, rng());
      out = apply_circuit(psi, cliff.embedded(n, range_sites(2 * f)));
      for (int c = 0; c < 5; ++c) cuts.push_back(random_cut(range_sites(2 * f), f, rng));
    } else {
      for (int c = 0; c < 5; ++c) cuts.push_back(random_cut(range_sites(n), n / 2, rng));
    }
    const double m_before = stabilizer_entropy(psi, 2).value;
    const double m_after = stabilizer_entropy(out, 2).value;
    const double e_before = mean_cut_entropy(psi, cuts, 2);
    const double e_after = mean_cut_entropy(out, cuts, 2);
    table.set_row(i, {static_cast<std::int64_t>(i), m_before, m_after,
                      std::abs(m_after - m_before), e_before, e_after, e_after - e_before});
  });
  const double worst = max_of(table.column("m2_delta"));
  table.check("M2 unchanged (max |delta| <= 1e-9)", worst <= 1e-9, worst, 1e-9);
  if (k < f) {
    const double med = median(table.column("ent_increase"));
    table.check("median entanglement increase >= 1 bit", med >= 1.0, med, 1.0);
  }
  return table;
}

ResultTable tune_magic(int n, int k, int g, std::size_t samples, std::uint64_t seed) {
  require(n >= 2 && n <= 12 && k >= 1 && k <= n, "tune_magic: bad n or k");
  require(g >= 0 && g <= n, "tune_magic: need 0 <= g <= n");
  require(samples >= 2, "tune_magic: need at least two samples");
  ResultTable table({"sample", "m2_before", "m2_after", "exp_neg_m2_after", "max_cut_delta"});
  table.manifest = make_manifest("tune_magic", seed, n, k, {2.0}, samples, {{"g", g}});
  table.resize(samples);
  const auto cuts = all_cuts(n);
  for_each_sample(samples, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto psi = build_subset_phase_state(kwise_spec(n, k, rng));
    StateVector out = psi;
    for (int q = 0; q < g; ++q) apply_gate(out, SingleQubitGate{haar_unitary_2x2(rng), q});
    double delta = 0.0;
    for (const auto& cut : cuts) {
      for (int order : {1, 2}) {
        delta = std::max(delta, std::abs(entanglement_entropy(out, cut, order) -
                                         entanglement_entropy(psi, cut, order)));
      }
    }
    const double m_after = stabilizer_entropy(out, 2).value;
    table.set_row(i, {static_cast<std::int64_t>(i), stabilizer_entropy(psi, 2).value, m_after,
                      std::exp2(-m_after), delta});
  });
  const double worst = max_of(table.column("max_cut_delta"));
  table.check("cut entropies unchanged (max |delta| <= 1e-9)", worst <= 1e-9, worst, 1e-9);
  const auto z = table.column("exp_neg_m2_after");
  const double bound = 2520.0 * std::pow(0.8, g) + 3.0 * standard_error(z);
  table.check("mean 2^-M2 <= 2520 (4/5)^g + 3 stderr", mean(z) <= bound, mean(z), bound);
  if (g > 0) {
    const double before = median(table.column("m2_before"));
    const double after = median(table.column("m2_after"));
    table.check("median M2 strictly increases", after > before, after, before,
                "bound column holds the median before");
  }
  return table;
}

ResultTable independence_grid(int n, int k, const std::vector<int>& f_list,
                              const std::vector<int>& g_list, std::size_t samples,
                              std::uint64_t seed) {
  require(n >= 2 && n <= 12 && k >= 1 && k <= n, "independence_grid: bad n or k");
  require(!f_list.empty() && !g_list.empty() && samples >= 1, "independence_grid: empty grid");
  for (int f : f_list) require(f >= 0 && 2 * f <= n, "independence_grid: f out of range");
  for (int g : g_list) require(g >= 0 && g <= n, "independence_grid: g out of range");
  ResultTable table({"f", "g", "median_entanglement", "median_m2", "samples"});
  table.manifest = make_manifest("independence_grid", seed, n, k, {2.0}, samples,
                                 {{"f_list", f_list}, {"g_list", g_list}});
  Rng cut_rng = make_stream(seed, ~std::uint64_t{0});
  std::vector<CutSpec> cuts;
  for (int c = 0; c < 5; ++c) cuts.push_back(random_cut(range_sites(n), n / 2, cut_rng));

  const std::size_t cells = f_list.size() * g_list.size();
  std::vector<double> ent(cells * samples), mag(cells * samples);
  for_each_sample(cells * samples, [&](std::size_t idx) {
    const std::size_t cell = idx / samples;
    const int f = f_list[cell / g_list.size()];
    const int g = g_list[cell % g_list.size()];
    // the base state depends only on the sample so cells are comparable
    Rng rng = make_stream(seed, idx % samples);
    StateVector psi = build_subset_phase_state(kwise_spec(n, k, rng));
    Rng ops = make_stream(stream_seed(seed, 1 + cell), idx % samples);
    if (f > 0) psi = apply_circuit(psi, random_clifford_circuit(2 * f, ops()).embedded(n, range_sites(2 * f)));
    for (int q = 0; q < g; ++q) apply_gate(psi, SingleQubitGate{haar_unitary_2x2(ops), q});
    ent[idx] = mean_cut_entropy(psi, cuts, 2);
    mag[idx] = stabilizer_entropy(psi, 2).value;
  });
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const auto first = static_cast<std::ptrdiff_t>(cell * samples);
    const auto last = first + static_cast<std::ptrdiff_t>(samples);
    table.add_row({std::int64_t{f_list[cell / g_list.size()]},
                   std::int64_t{g_list[cell % g_list.size()]},
                   median(std::vector<double>(ent.begin() + first, ent.begin() + last)),
                   median(std::vector<double>(mag.begin() + first, mag.begin() + last)),
                   static_cast<std::int64_t>(samples)});
  }
  return table;
}

namespace {

using CMat = Eigen::MatrixXcd;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Normalized projector onto the symmetric subspace of (C^d)^(x)K.
CMat haar_moment(std::uint64_t d, int copies) {
  std::uint64_t dim = 1;
  for (int c = 0; c < copies; ++c) dim *= d;
  CMat proj = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> perm(static_cast<std::size_t>(copies));
  std::iota(perm.begin(), perm.end(), 0);
  double perms = 0.0;
  std::vector<std::uint64_t> digits(perm.size());
  do {
    perms += 1.0;
    for (std::uint64_t x = 0; x < dim; ++x) {
      std::uint64_t rest = x;
      for (auto& dg : digits) {
        dg = rest % d;
        rest /= d;
      }
      std::uint64_t y = 0;
      for (int c = copies; c-- > 0;) y = y * d + digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])];
      proj(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) += 1.0;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return proj / (perms * static_cast<double>(binomial(d + copies - 1, copies)));
}

Eigen::VectorXcd tensor_power(const StateVector& s, int copies) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int c = 0; c < copies; ++c) {
    Eigen::VectorXcd next(v.size() * static_cast<Eigen::Index>(s.dim()));
    for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(s.dim()); ++a)
      next.segment(a * v.size(), v.size()) = s[static_cast<std::uint64_t>(a)] * v;
    v = std::move(next);
  }
  return v;
}

double trace_norm_distance(const CMat& a, const CMat& b) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

void check_moment_dims(int n, int copies) {
  require(n >= 1 && copies >= 1 && n * copies <= 8, "moment distance: need n * K <= 8");
}

}  // namespace

double ensemble_moment_distance(const std::vector<StateVector>& ensemble, int copies) {
  require(!ensemble.empty(), "ensemble_moment_distance: empty ensemble");
  const int n = ensemble.front().num_qubits();
  check_moment_dims(n, copies);
  CMat acc;
  for (const auto& s : ensemble) {
    require(s.num_qubits() == n, "ensemble_moment_distance: mixed qubit counts");
    const auto v = tensor_power(s, copies);
    if (acc.size() == 0) acc = CMat::Zero(v.size(), v.size());
    acc.noalias() += v * v.adjoint();
  }
  acc /= static_cast<double>(ensemble.size());
  return trace_norm_distance(acc, haar_moment(ensemble.front().dim(), copies));
}

double moment_distance(int n, int k, int copies, std::size_t samples, std::uint64_t seed) {
  check_moment_dims(n, copies);
  require(k >= 1 && k <= n && samples >= 1, "moment_distance: bad k or samples");
  const std::uint64_t d = std::uint64_t{1} << n;
  std::uint64_t dim = 1;
  for (int c = 0; c < copies; ++c) dim *= d;
  CMat acc = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = make_stream(seed, i);
    const auto v = tensor_power(build_subset_phase_state(truth_table_spec(n, k, rng)), copies);
    acc.noalias() += v * v.adjoint();
  }
  acc /= static_cast<double>(samples);
  return trace_norm_distance(acc, haar_moment(d, copies));
}

ResultTable moment_distance_table(int n, const std::vector<int>& k_list, int copies,
                                  std::size_t samples, std::uint64_t seed) {
  require(!k_list.empty(), "moment_distance: empty k list");
  ResultTable table({"k", "subset_size", "copies", "distance"});
  table.manifest = make_manifest("moment_distance", seed, n, k_list.front(), {}, samples,
                                 {{"k_list", k_list}, {"copies", copies}});
  std::vector<double> dist(k_list.size());
  for_each_sample(k_list.size(), [&](std::size_t j) {
    dist[j] = moment_distance(n, k_list[j], copies, samples, stream_seed(seed, static_cast<std::uint64_t>(k_list[j])));
  });
  for (std::size_t j = 0; j < k_list.size(); ++j) {
    table.add_row({std::int64_t{k_list[j]}, static_cast<std::int64_t>(std::int64_t{1} << k_list[j]),
                   std::int64_t{copies}, dist[j]});
  }
  std::vector<int> order(k_list.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return k_list[a] < k_list[b]; });
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < order.size(); ++j)
    worst = std::max(worst, dist[order[j]] - dist[order[j - 1]]);
  if (order.size() > 1) {
    table.check("distance non-increasing in |S|", worst <= 0.0, worst, 0.0);
  }
  return table;
}

DistillationBound distillation_bound(int m_copies, const StateVector& target,
                                     double input_dmax_bits, double p_success, double epsilon) {
  require(m_copies >= 1, "distillation_bound: m must be >= 1");
  require(p_success > 0.0 && p_success <= 1.0, "distillation_bound: need 0 < p <= 1");
  require(epsilon >= 0.0 && epsilon < 1.0, "distillation_bound: need 0 <= eps < 1");
  require(input_dmax_bits > 0.0, "distillation_bound: input D_max must be positive");
  require(target.num_qubits() <= 3, "distillation_bound: target on at most 3 qubits");
  const auto catalog = enumerate_stabilizers(target.num_qubits());
  DistillationBound b;
  b.fidelity_term = m_copies * stabilizer_fidelity(target, catalog);
  b.log_terms = std::log2(p_success) + std::log2(1.0 - epsilon);
  b.copies = (b.log_terms + b.fidelity_term) / input_dmax_bits;
  b.naive_ratio = m_copies * dmax_pure(target, catalog) / input_dmax_bits;
  b.vacuous = !std::isfinite(b.copies) || b.copies <= 0.0;
  return b;
}

namespace {

StateVector named_target(const std::string& name) {
  if (name == "T") return StateVector::t_state();
  if (name == "TT") return StateVector::t_state().tensor(StateVector::t_state());
  if (name == "TTT") {
    return StateVector::t_state().tensor(StateVector::t_state()).tensor(StateVector::t_state());
  }
  return read_state_file(name);
}

}  // namespace

ResultTable distillation_table(const std::vector<int>& m_list, const std::string& target,
                               double input_dmax_bits, double p_success, double epsilon) {
  require(!m_list.empty(), "distillation_bound: empty m list");
  const StateVector t = named_target(target);
  ResultTable table({"m", "copies_lower_bound", "fidelity_term", "log_terms", "naive_ratio",
                     "vacuous"});
  table.manifest = make_manifest("distillation_bound", 0, t.num_qubits(), 0, {}, m_list.size(),
                                 {{"m_list", m_list},
                                  {"target", target},
                                  {"input_dmax_bits", input_dmax_bits},
                                  {"p", p_success},
                                  {"eps", epsilon}});
  bool any_vacuous = false;
  for (int m : m_list) {
    const auto b = distillation_bound(m, t, input_dmax_bits, p_success, epsilon);
    any_vacuous = any_vacuous || b.vacuous;
    table.add_row({std::int64_t{m}, b.copies, b.fidelity_term, b.log_terms, b.naive_ratio,
                   std::int64_t{b.vacuous ? 1 : 0}});
  }
  if (any_vacuous) {
    table.check("bound is informative", true, 0.0, 0.0,
                "warning: some rows are vacuous (non-positive bound)");
  }
  return table;
}

ResultTable fannes_scan(int n, std::size_t pairs, std::uint64_t seed) {
  require(n >= 1 && n <= 4, "fannes_scan: n must be in [1, 4]");
  require(pairs >= 1, "fannes_scan: need pairs");
  ResultTable table({"pair", "trace_distance", "m1_delta", "m1_rhs", "m2_delta", "m2_rhs"});
  table.manifest = make_manifest("fannes_scan", seed, n, 0, {1.0, 2.0}, pairs);
  table.resize(pairs);
  for_each_sample(pairs, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto psi = haar_sample(n, rng());
    const auto chi = haar_sample(n, rng());
    // angle spread so that small distances are well represented
    const double theta = 0.5 * std::numbers::pi * std::pow(uniform01(rng), 2);
    std::vector<Complex> amps(psi.dim());
    for (std::uint64_t x = 0; x < psi.dim(); ++x)
      amps[x] = std::cos(theta) * psi[x] + std::sin(theta) * chi[x];
    StateVector phi(n, std::move(amps));
    phi.normalize();
    const double td = trace_distance_pure(psi, phi);
    const double d1 = std::abs(stabilizer_entropy(psi, 1).value - stabilizer_entropy(phi, 1).value);
    const double d2 = std::abs(stabilizer_entropy(psi, 2).value - stabilizer_entropy(phi, 2).value);
    table.set_row(i, {static_cast<std::int64_t>(i), td, d1, fannes_rhs(td, n, 1.0), d2,
                      fannes_rhs(td, n, 2.0)});
  });
  for (int a : {1, 2}) {
    const auto delta = table.column("m" + std::to_string(a) + "_delta");
    const auto rhs = table.column("m" + std::to_string(a) + "_rhs");
    double violations = 0.0;
    for (std::size_t r = 0; r < delta.size(); ++r) violations += delta[r] > rhs[r] ? 1.0 : 0.0;
    table.check("alpha=" + std::to_string(a) + " continuity violations", violations == 0.0,
                violations, 0.0);
  }
  return table;
}

ResultTable otoc_identity_check(int n, std::size_t circuits, int alpha, std::uint64_t seed) {
  require(n >= 1 && n <= 8, "otoc_identity_check: n must be in [1, 8]");
  require(alpha >= 2 && circuits >= 1, "otoc_identity_check: need alpha >= 2 and circuits");
  const bool direct = n <= 4 && alpha == 2;
  ResultTable table({"kind", "index", "identity_value", "direct_value", "abs_diff", "m_alpha",
                     "identity_entropy", "entropy_diff"});
  table.manifest = make_manifest("otoc_identity", seed, n, 0, {double(alpha)}, circuits);
  table.resize(2 * circuits);
  const double d2 = std::exp2(2.0 * n);
  for_each_sample(2 * circuits, [&](std::size_t idx) {
    const bool clifford = idx >= circuits;
    const std::size_t i = idx % circuits;
    const std::uint64_t s = stream_seed(stream_seed(seed, clifford ? 1 : 0), i);
    const GateCircuit u = clifford ? random_clifford_circuit(n, s) : random_brickwork_circuit(n, 3, s);
    const double id_value = averaged_otoc(u, alpha);
    const double dir_value = direct ? averaged_otoc(u, alpha, OtocMethod::Direct) : std::nan("");
    const double m = stabilizer_entropy(apply_circuit(StateVector(n), u), alpha).value;
    const double m_id = std::log2(d2 * id_value) / (1.0 - alpha);
    table.set_row(idx, {std::string(clifford ? "clifford" : "random"), static_cast<std::int64_t>(i),
                        id_value, dir_value, direct ? std::abs(id_value - dir_value) : std::nan(""),
                        m, m_id, std::abs(m - m_id)});
  });
  const auto ids = table.column("identity_value");
  if (direct) table.check("direct vs identity (max |diff| <= 1e-9)", max_of(table.column("abs_diff")) <= 1e-9, max_of(table.column("abs_diff")), 1e-9);
  const double ediff = max_of(table.column("entropy_diff"));
  table.check("entropy identity (max |diff| <= 1e-9)", ediff <= 1e-9, ediff, 1e-9);
  double cliff_gap = 0.0;
  for (std::size_t r = circuits; r < 2 * circuits; ++r) cliff_gap = std::max(cliff_gap, std::abs(ids[r] * d2 - 1.0));
  table.check("Clifford circuits give 1/d^2", cliff_gap <= 1e-12, cliff_gap, 1e-12,
              "value is |d^2 C - 1|");
  const bool in_range = std::all_of(ids.begin(), ids.end(), [&](double c) { return c > 0.0 && c <= (1.0 + 1e-12) / d2; });
  table.check("averaged correlator in (0, 1/d^2]", in_range, max_of(ids) * d2, 1.0, "value is max d^2 C");
  return table;
}

ResultTable scrambling_experiment(const std::vector<int>& n_list, int k, int alpha,
                                  std::size_t samples, std::uint64_t seed) {
  require(!n_list.empty() && samples >= 1, "scrambling: empty n list or no samples");
  require(alpha >= 2, "scrambling: alpha must be >= 2");
  SubsetPhaseSpec spec;
  spec.k = k;
  spec.fn_kind = FunctionKind::KWise;
  spec.fn_seed = stream_seed(seed, 0);
  spec.subset_seed = stream_seed(seed, 1);
  std::vector<std::uint64_t> seeds(samples);
  for (std::size_t i = 0; i < samples; ++i) seeds[i] = stream_seed(stream_seed(seed, 2), i);
  const auto rows = scrambling_ratio(spec, n_list, alpha, seeds);
  ResultTable table({"n", "subset_otoc", "haar_otoc_mean", "haar_otoc_stderr", "haar_samples",
                     "ratio", "predicted_ratio", "subset_entropy", "haar_entropy_mean"});
  table.manifest = make_manifest("scrambling_ratio", seed, n_list.front(), k, {double(alpha)},
                                 samples, {{"n_list", n_list}});
  for (const auto& r : rows) {
    table.add_row({std::int64_t{r.n}, r.subset_otoc, r.haar_otoc_mean, r.haar_otoc_stderr,
                   static_cast<std::int64_t>(r.haar_samples), r.ratio, r.predicted_ratio,
                   r.subset_entropy, r.haar_entropy_mean});
  }
  for (std::size_t j = 1; j < rows.size(); ++j) {
    const double growth = rows[j].ratio / rows[j - 1].ratio;
    table.check("ratio grows >= 2x from n=" + std::to_string(rows[j - 1].n) + " to n=" +
                    std::to_string(rows[j].n),
                growth >= 2.0, growth, 2.0);
  }
  return table;
}

ResultTable state_measures(const std::string& state_path, const std::vector<double>& alphas,
                           const std::vector<std::string>& measures) {
  require(!measures.empty(), "state_measures: no measures requested");
  const StateVector psi = read_state_file(state_path);
  ResultTable table({"measure", "value"});
  table.manifest = make_manifest("state_measures", 0, psi.num_qubits(), 0, alphas, 1,
                                 {{"state", state_path}, {"measures", measures}});
  std::optional<PauliSpectrum> spectrum;
  std::optional<StabilizerCatalog> catalog;
  auto spec = [&]() -> const PauliSpectrum& {
    if (!spectrum) spectrum = full_spectrum(psi);
    return *spectrum;
  };
  auto cat = [&]() -> const StabilizerCatalog& {
    require(psi.num_qubits() <= 3, "state_measures: convex measures need n <= 3");
    if (!catalog) catalog = enumerate_stabilizers(psi.num_qubits());
    return *catalog;
  };
  for (const auto& m : measures) {
    if (m == "m") {
      for (double a : alphas) table.add_row({alpha_name(a), stabilizer_entropy(spec(), a).value});
    } else if (m.size() > 1 && m[0] == 'm' && m.find_first_not_of("0123456789.", 1) == std::string::npos) {
      const double a = std::stod(m.substr(1));
      table.add_row({alpha_name(a), stabilizer_entropy(spec(), a).value});
    } else if (m == "rob") {
      table.add_row({std::string("robustness"), robustness_lp(psi, cat()).value_bits});
    } else if (m == "fid") {
      table.add_row({std::string("fidelity"), stabilizer_fidelity(psi, cat())});
    } else if (m == "ext") {
      table.add_row({std::string("extent"), stabilizer_extent(psi, cat()).value_bits});
    } else if (m == "dmax") {
      table.add_row({std::string("dmax"), dmax_pure(psi, cat())});
    } else if (m == "nullity") {
      table.add_row({std::string("nullity"), double(stabilizer_group(psi).nullity)});
    } else {
      throw std::invalid_argument("state_measures: unknown measure '" + m + "'");
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
T param(const ExperimentManifest& m, const char* key) {
  if (!m.parameters.contains(key)) {
    throw std::invalid_argument("manifest for " + m.experiment + " lacks parameter " + key);
  }
  return m.parameters.at(key).get<T>();
}

int first_alpha(const ExperimentManifest& m, int fallback) {
  return m.alpha.empty() ? fallback : static_cast<int>(m.alpha.front());
}

}  // namespace

const std::map<std::string, ExperimentRunner>& experiment_registry() {
  static const std::map<std::string, ExperimentRunner> registry = {
      {"state_measures",
       [](const ExperimentManifest& m) {
         return state_measures(param<std::string>(m, "state"), m.alpha,
                               param<std::vector<std::string>>(m, "measures"));
       }},
      {"haar_baseline",
       [](const ExperimentManifest& m) {
         return haar_baseline(m.n, m.sample_count, m.alpha, m.master_seed);
       }},
      {"phase_state_average",
       [](const ExperimentManifest& m) {
         return phase_state_average(m.n, m.sample_count, m.master_seed);
       }},
      {"subset_tightness",
       [](const ExperimentManifest& m) {
         return subset_tightness(m.n, param<std::vector<int>>(m, "k_list"), m.sample_count,
                                 m.master_seed);
       }},
      {"distinguisher_gap",
       [](const ExperimentManifest& m) {
         return distinguisher_gap(m.n, m.k, first_alpha(m, 3), m.sample_count, m.master_seed);
       }},
      {"tune_entanglement",
       [](const ExperimentManifest& m) {
         return tune_entanglement(m.n, m.k, param<int>(m, "f"), m.sample_count, m.master_seed);
       }},
      {"tune_magic",
       [](const ExperimentManifest& m) {
         return tune_magic(m.n, m.k, param<int>(m, "g"), m.sample_count, m.master_seed);
       }},
      {"independence_grid",
       [](const ExperimentManifest& m) {
         return independence_grid(m.n, m.k, param<std::vector<int>>(m, "f_list"),
                                  param<std::vector<int>>(m, "g_list"), m.sample_count,
                                  m.master_seed);
       }},
      {"moment_distance",
       [](const ExperimentManifest& m) {
         return moment_distance_table(m.n, param<std::vector<int>>(m, "k_list"),
                                      param<int>(m, "copies"), m.sample_count, m.master_seed);
       }},
      {"distillation_bound",
       [](const ExperimentManifest& m) {
         return distillation_table(param<std::vector<int>>(m, "m_list"),
                                   param<std::string>(m, "target"),
                                   param<double>(m, "input_dmax_bits"), param<double>(m, "p"),
                                   param<double>(m, "eps"));
       }},
      {"fannes_scan",
       [](const ExperimentManifest& m) { return fannes_scan(m.n, m.sample_count, m.master_seed); }},
      {"otoc_identity",
       [](const ExperimentManifest& m) {
         return otoc_identity_check(m.n, m.sample_count, first_alpha(m, 2), m.master_seed);
       }},
      {"scrambling_ratio",
       [](const ExperimentManifest& m) {
         return scrambling_experiment(param<std::vector<int>>(m, "n_list"), m.k,
                                      first_alpha(m, 2), m.sample_count, m.master_seed);
       }},
  };
  return registry;
}

ResultTable replay(const ExperimentManifest& manifest) {
  const auto& reg = experiment_registry();
  const auto it = reg.find(manifest.experiment);
  if (it == reg.end()) throw std::invalid_argument("replay: unknown experiment " + manifest.experiment);
  return it->second(manifest);
}

}  // namespace magiclab
