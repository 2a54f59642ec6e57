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

#include "magiclab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "magiclab/rng.hpp"

namespace magiclab {

const char* to_string(LpResult::Status s) {
  switch (s) {
    case LpResult::Status::Optimal: return "optimal";
    case LpResult::Status::Infeasible: return "infeasible";
    case LpResult::Status::Unbounded: return "unbounded";
    default: return "iteration limit";
  }
}

namespace {

constexpr int kStallLimit = 50;

// Tableau with m constraint rows, n structural + m artificial columns, then a
// perturbed and an exact right-hand side; row m holds reduced costs, its rhs
// entries minus the objective.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double perturbation)
      : m_(A.rows()), n_(A.cols()), t_(A.rows() + 1, A.cols() + A.rows() + 2),
        basis_(A.rows()), sign_(A.rows()) {
    t_.setZero();
    const double scale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    Rng rng(0x5eed5eed5eedULL);
    for (Eigen::Index i = 0; i < m_; ++i) {
      sign_[i] = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign_[i] * A.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, exact()) = sign_[i] * b(i);
      t_(i, rhs()) = t_(i, exact()) + perturbation * scale * (1.0 + uniform01(rng));
      basis_[i] = n_ + i;
    }
  }

  /// Perturbed right-hand side, used for pivoting decisions.
  Eigen::Index rhs() const { return n_ + m_; }
  Eigen::Index exact() const { return n_ + m_ + 1; }
  Eigen::Index rows() const { return m_; }
  Eigen::Index structural() const { return n_; }

  void set_costs(const Eigen::VectorXd& full_cost) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_ + m_) = full_cost.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double cb = full_cost(basis_[i]);
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
      // round-off below zero would let the ratio test step backwards
      if (i < m_ && t_(i, rhs()) < 0.0 && t_(i, rhs()) > -1e-11) t_(i, rhs()) = 0.0;
    }
    basis_[row] = col;
  }

  // Returns Optimal, Unbounded or IterationLimit. Columns >= allowed are
  // never chosen to enter.
  LpResult::Status run(Eigen::Index allowed, const LpOptions& opt, long& iters,
                       bool stop_at_zero = false) {
    int degenerate_run = 0;
    while (true) {
      if (stop_at_zero && perturbed_value() <= 0.0) return LpResult::Status::Optimal;
      if (iters >= opt.max_iterations) return LpResult::Status::IterationLimit;
      // Dantzig pricing falls back to Bland while the objective stalls.
      const bool bland = opt.rule == PivotRule::Bland || degenerate_run > kStallLimit;
      Eigen::Index enter = -1;
      double best = -opt.tol;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        const double rc = t_(m_, j);
        if (rc < best) {
          enter = j;
          if (bland) break;
          best = rc;
        }
      }
      if (enter < 0) return LpResult::Status::Optimal;
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a > opt.tol) {
          const double r = std::max(0.0, t_(i, rhs())) / a;
          if (r < ratio - 1e-12 ||
              (r <= ratio + 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
            ratio = std::min(ratio, r);
            leave = i;
          }
        }
      }
      if (leave < 0) return LpResult::Status::Unbounded;
      degenerate_run = ratio * -t_(m_, enter) <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iters;
    }
  }

  // Pivots zero-level artificials out of the basis where possible.
  void drive_out_artificials(double tol) {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > tol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double perturbed_value() const { return -t_(m_, rhs()); }
  double value() const { return -t_(m_, exact()); }

  /// Smallest basic value for the unperturbed right-hand side.
  double min_exact() const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) v = std::min(v, t_(i, exact()));
    return v;
  }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) x(basis_[i]) = std::max(0.0, t_(i, exact()));
    return x;
  }

  /// Drops the perturbation: pivoting continues on the exact values.
  void unperturb() { t_.col(rhs()) = t_.col(exact()); }

  // With zero artificial costs, the reduced cost of artificial i is -y_i in
  // the sign-normalized system.
  Eigen::VectorXd dual() const {
    Eigen::VectorXd y(m_);
    for (Eigen::Index i = 0; i < m_; ++i) y(i) = -t_(m_, n_ + i) * sign_[i];
    return y;
  }

 private:
  Eigen::Index m_, n_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t_;
  std::vector<Eigen::Index> basis_;
  std::vector<double> sign_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, const LpOptions& options) {
  if (A.rows() != b.size() || A.cols() != c.size()) {
    throw std::invalid_argument("solve_lp: dimension mismatch");
  }
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  Tableau tab(A, b, options.perturbation);
  LpResult res;

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  tab.set_costs(phase1);
  auto st = tab.run(n + m, options, res.iterations, true);
  if (st == LpResult::Status::IterationLimit) {
    res.status = st;
    return res;
  }
  const double scale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
  if (tab.value() > 1e-7 * scale) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  tab.drive_out_artificials(1e-7);

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = c;
  tab.set_costs(phase2);
  st = tab.run(n, options, res.iterations);
  if (st == LpResult::Status::Optimal && tab.min_exact() < -1e-9 * scale) {
    tab.unperturb();
    st = tab.run(n, options, res.iterations);
  }
  res.status = st;
  if (st != LpResult::Status::Optimal) return res;
  res.x = tab.primal();
  res.objective = c.dot(res.x);
  res.dual = tab.dual();
  return res;
}

}  // namespace magiclab
