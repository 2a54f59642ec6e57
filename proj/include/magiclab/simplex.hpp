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

#include <Eigen/Dense>
#include <string>

namespace magiclab {

/// Bland: smallest improving index, always. Dantzig: most negative reduced
/// cost, switching to Bland after a run of degenerate pivots.
enum class PivotRule { Bland, Dantzig };

struct LpOptions {
  PivotRule rule = PivotRule::Dantzig;
  double tol = 1e-9;
  long max_iterations = 1000000;
  /// Relative size of the deterministic right-hand-side perturbation used to
  /// break degeneracy; the reported solution is for the unperturbed b.
  double perturbation = 1e-9;
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Optimal;
  double objective = 0.0;
  Eigen::VectorXd x;     ///< primal solution
  Eigen::VectorXd dual;  ///< y with A^T y <= c at optimality, b^T y = objective
  long iterations = 0;
};

const char* to_string(LpResult::Status s);

/// min c^T x subject to A x = b, x >= 0, by the two-phase tableau simplex.
/// Rows with negative b are negated internally; the returned dual refers to
/// the original rows.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, const LpOptions& options = {});

}  // namespace magiclab
