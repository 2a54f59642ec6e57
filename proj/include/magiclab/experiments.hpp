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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "magiclab/state.hpp"

namespace magiclab {

inline constexpr const char* kCodeVersion = "magiclab 0.1.0";

/// Everything needed to rerun an experiment.
struct ExperimentManifest {
  std::string experiment;
  std::uint64_t master_seed = 0;
  int n = 0;
  int k = 0;
  std::vector<double> alpha;
  std::size_t sample_count = 0;
  nlohmann::json parameters = nlohmann::json::object();
  std::string code_version = kCodeVersion;

  nlohmann::json to_json() const;
  static ExperimentManifest from_json(const nlohmann::json& j);
  bool operator==(const ExperimentManifest&) const = default;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct ColumnSummary {
  std::string column;
  double mean = 0.0;
  double stderr_mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// A bound checked on the table: passed iff value <= bound (or the stated
/// relation held), recorded either way.
struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  void add_row(std::vector<Cell> row);
  void set_row(std::size_t index, std::vector<Cell> row);
  void resize(std::size_t rows);

  /// Values of a numeric column; throws std::out_of_range for unknown names.
  std::vector<double> column(const std::string& name) const;
  /// Numeric columns only.
  std::vector<ColumnSummary> summary() const;

  void check(std::string name, bool passed, double value, double bound, std::string detail = {});
  const std::vector<CheckResult>& checks() const { return checks_; }
  bool all_passed() const;

  ExperimentManifest manifest;

  /// RFC 4180; doubles printed with 17 significant digits.
  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::size_t index_of(const std::string& name) const;

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<CheckResult> checks_;
};

double mean(const std::vector<double>& v);
/// Standard error of the mean (sample standard deviation / sqrt(count)).
double standard_error(const std::vector<double>& v);
double median(std::vector<double> v);

/// Thread count for sample-parallel loops: the flag if given, else
/// MAGICLAB_THREADS, else the OpenMP default. Returns the count in effect.
int configure_threads(std::optional<int> flag = std::nullopt);

// ---------------------------------------------------------------------------
// Experiments. Each returns its table with `manifest` filled in; replaying
// that manifest reproduces the table byte for byte.

ResultTable haar_baseline(int n, std::size_t samples, const std::vector<double>& alphas,
                          std::uint64_t seed);

/// Full-domain phase states with uniformly random sign functions; n in [4, 10].
ResultTable phase_state_average(int n, std::size_t samples, std::uint64_t seed);

/// Subset phase states with 8-wise independent sign functions.
ResultTable subset_tightness(int n, const std::vector<int>& k_list, std::size_t samples,
                             std::uint64_t seed);

/// Hadamard-test acceptance probability (1 + tr(Pi psi^(x)2 alpha)) / 2 for odd alpha.
double hadamard_acceptance(const StateVector& state, int alpha);
ResultTable distinguisher_gap(int n, int k, int alpha, std::size_t samples, std::uint64_t seed);

/// Random Clifford on the first 2 f qubits of subset phase states.
ResultTable tune_entanglement(int n, int k, int f, std::size_t samples, std::uint64_t seed);

/// Haar single-qubit unitaries on the first g qubits of subset phase states.
ResultTable tune_magic(int n, int k, int g, std::size_t samples, std::uint64_t seed);

/// Median cut entropy and median M_2 over the grid of (f, g) pairs.
ResultTable independence_grid(int n, int k, const std::vector<int>& f_list,
                              const std::vector<int>& g_list, std::size_t samples,
                              std::uint64_t seed);

/// Trace distance between the K-th moment of an ensemble and the Haar moment.
double ensemble_moment_distance(const std::vector<StateVector>& ensemble, int copies);
/// Ensemble: subset phase states with random truth-table signs and random
/// subsets of size 2^k. n * copies <= 8.
double moment_distance(int n, int k, int copies, std::size_t samples, std::uint64_t seed);
ResultTable moment_distance_table(int n, const std::vector<int>& k_list, int copies,
                                  std::size_t samples, std::uint64_t seed);

struct DistillationBound {
  double copies = 0.0;        ///< lower bound on copies of the input
  double fidelity_term = 0.0; ///< m * F_stab(target) in bits
  double log_terms = 0.0;     ///< log2 p + log2(1 - eps)
  double naive_ratio = 0.0;   ///< m * Dmax(target) / Dmax(input)
  bool vacuous = false;       ///< copies <= 0 or not finite
};

/// target on at most 3 qubits.
DistillationBound distillation_bound(int m_copies, const StateVector& target,
                                     double input_dmax_bits, double p_success, double epsilon);
ResultTable distillation_table(const std::vector<int>& m_list, const std::string& target,
                               double input_dmax_bits, double p_success, double epsilon);

/// Random pairs (psi, phi) at distance spread over [0, 2]; checks both
/// continuity bounds.
ResultTable fannes_scan(int n, std::size_t pairs, std::uint64_t seed);

/// Random circuits and Clifford circuits: spectrum identity vs direct
/// average (direct only for n <= 4, alpha = 2) and the entropy identity.
ResultTable otoc_identity_check(int n, std::size_t circuits, int alpha, std::uint64_t seed);

/// Averaged-correlator ratio of subset phase state circuits (|S| = 2^k)
/// over Haar states.
ResultTable scrambling_experiment(const std::vector<int>& n_list, int k, int alpha,
                                  std::size_t samples, std::uint64_t seed);

/// Measures of a stored state. Tokens: m<alpha> (e.g. m2), m for every
/// entry of `alphas`, rob, fid, ext, dmax, nullity. Convex measures need n <= 3.
ResultTable state_measures(const std::string& state_path, const std::vector<double>& alphas,
                           const std::vector<std::string>& measures);

/// name -> runner taking a manifest.
using ExperimentRunner = std::function<ResultTable(const ExperimentManifest&)>;
const std::map<std::string, ExperimentRunner>& experiment_registry();
ResultTable replay(const ExperimentManifest& manifest);

/// Writes {experiment}_{seed}_{timestamp}.{csv,json} and .manifest.json into
/// dir; returns the common path stem.
std::string write_result_files(const ResultTable& table, const std::string& dir);

}  // namespace magiclab
