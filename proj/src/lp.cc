// Copyright 2026 The stablerank Authors
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

#include "stablerank/lp.h"

#include <stdexcept>

namespace stablerank {

void LinearProgram::validate() const {
  if (rows.size() != b.size()) {
    throw std::invalid_argument("LP: row count differs from rhs length");
  }
  for (const auto& row : rows) {
    for (const auto& [col, coef] : row) {
      if (col < 0 || col >= num_vars()) {
        throw std::invalid_argument("LP: column index out of range");
      }
    }
  }
}

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal:
      return "optimal";
    case LPStatus::kInfeasible:
      return "infeasible";
    case LPStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// Dense tableau for max p^T u, M u + s = q. Column layout: structural
// columns, then one slack per row, then the phase-one auxiliary column.
class Tableau {
 public:
  explicit Tableau(const CanonicalMax& problem)
      : rows_(static_cast<int>(problem.rows.size())),
        structural_(problem.num_cols),
        cols_(structural_ + rows_ + 1),
        aux_(structural_ + rows_),
        cells_(static_cast<std::size_t>(rows_) * cols_),
        rhs_(problem.q),
        objective_(cols_),
        basis_(rows_) {
    for (int r = 0; r < rows_; ++r) {
      for (const auto& [col, coef] : problem.rows[r]) at(r, col) += coef;
      at(r, structural_ + r) = 1;
      at(r, aux_) = -1;
      basis_[r] = structural_ + r;
    }
  }

  mpq_class& at(int r, int c) {
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const mpq_class& at(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }

  void pivot(int pr, int pc) {
    ++pivots_;
    const mpq_class inv = 1 / at(pr, pc);
    nonzero_.clear();
    for (int c = 0; c < cols_; ++c) {
      mpq_class& cell = at(pr, c);
      if (sgn(cell) != 0) {
        cell *= inv;
        nonzero_.push_back(c);
      }
    }
    rhs_[pr] *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      eliminate(&at(r, 0), rhs_[r], pr, pc);
    }
    eliminate(objective_.data(), objective_value_, pr, pc);
    basis_[pr] = pc;
  }

  // Bland: lowest-index improving column, lowest-index leaving basic.
  // Returns false at optimality; sets *unbounded when no row limits the step.
  bool step(bool allow_aux, bool* unbounded) {
    int enter = -1;
    for (int c = 0; c < cols_; ++c) {
      if (c == aux_ && !allow_aux) continue;
      if (sgn(objective_[c]) < 0) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    mpq_class best_ratio;
    for (int r = 0; r < rows_; ++r) {
      const mpq_class& a = at(r, enter);
      if (sgn(a) <= 0) continue;
      mpq_class ratio = rhs_[r] / a;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }

  // Installs max p^T u as the objective row for the current basis.
  void set_objective(const std::vector<mpq_class>& p) {
    auto price = [&](int c) -> mpq_class {
      return c < structural_ ? p[c] : mpq_class(0);
    };
    for (int c = 0; c < cols_; ++c) objective_[c] = -price(c);
    objective_value_ = 0;
    for (int r = 0; r < rows_; ++r) {
      const mpq_class cb = price(basis_[r]);
      if (sgn(cb) == 0) continue;
      for (int c = 0; c < cols_; ++c) {
        if (sgn(at(r, c)) != 0) objective_[c] += cb * at(r, c);
      }
      objective_value_ += cb * rhs_[r];
    }
  }

  // Phase-one objective: max -u_aux.
  void set_aux_objective() {
    for (auto& o : objective_) o = 0;
    objective_[aux_] = 1;
    objective_value_ = 0;
  }

  int rows() const { return rows_; }
  int aux() const { return aux_; }
  int structural() const { return structural_; }
  int basis(int r) const { return basis_[r]; }
  const mpq_class& rhs(int r) const { return rhs_[r]; }
  const mpq_class& objective(int c) const { return objective_[c]; }
  const mpq_class& objective_value() const { return objective_value_; }
  int pivots() const { return pivots_; }

 private:
  void eliminate(mpq_class* row, mpq_class& rhs, int pr, int pc) {
    if (sgn(row[pc]) == 0) return;
    const mpq_class factor = row[pc];
    const mpq_class* src = &at(pr, 0);
    for (int c : nonzero_) {
      mpq_mul(scratch_.get_mpq_t(), factor.get_mpq_t(), src[c].get_mpq_t());
      mpq_sub(row[c].get_mpq_t(), row[c].get_mpq_t(), scratch_.get_mpq_t());
    }
    mpq_mul(scratch_.get_mpq_t(), factor.get_mpq_t(), rhs_[pr].get_mpq_t());
    mpq_sub(rhs.get_mpq_t(), rhs.get_mpq_t(), scratch_.get_mpq_t());
  }

  int rows_;
  int structural_;
  int cols_;
  int aux_;
  std::vector<mpq_class> cells_;
  std::vector<mpq_class> rhs_;
  std::vector<mpq_class> objective_;
  mpq_class objective_value_;
  std::vector<int> basis_;
  std::vector<int> nonzero_;
  mpq_class scratch_;
  int pivots_ = 0;
};

}  // namespace

CanonicalResult solve_canonical(
    const CanonicalMax& problem,
    const std::function<void(const Rational&)>& on_iterate) {
  if (problem.q.size() != problem.rows.size() ||
      static_cast<int>(problem.p.size()) != problem.num_cols) {
    throw std::invalid_argument("canonical LP: dimension mismatch");
  }
  Tableau t(problem);
  CanonicalResult result;

  int most_negative = -1;
  for (int r = 0; r < t.rows(); ++r) {
    if (sgn(t.rhs(r)) < 0 &&
        (most_negative < 0 || t.rhs(r) < t.rhs(most_negative))) {
      most_negative = r;
    }
  }
  if (most_negative >= 0) {
    t.set_aux_objective();
    t.pivot(most_negative, t.aux());
    bool unbounded = false;
    while (t.step(/*allow_aux=*/true, &unbounded)) {
    }
    if (sgn(t.objective_value()) < 0) {
      result.status = LPStatus::kInfeasible;
      result.pivots = t.pivots();
      return result;
    }
    for (int r = 0; r < t.rows(); ++r) {
      if (t.basis(r) != t.aux()) continue;
      for (int c = 0; c < t.aux(); ++c) {
        if (sgn(t.at(r, c)) != 0) {
          t.pivot(r, c);
          break;
        }
      }
    }
  }

  t.set_objective(problem.p);
  if (on_iterate) on_iterate(t.objective_value());
  bool unbounded = false;
  while (t.step(/*allow_aux=*/false, &unbounded)) {
    if (on_iterate) on_iterate(t.objective_value());
  }
  result.pivots = t.pivots();
  if (unbounded) {
    result.status = LPStatus::kUnbounded;
    return result;
  }
  result.status = LPStatus::kOptimal;
  result.value = t.objective_value();
  result.u.assign(problem.num_cols, 0);
  for (int r = 0; r < t.rows(); ++r) {
    if (t.basis(r) < t.structural()) result.u[t.basis(r)] = t.rhs(r);
  }
  result.row_prices.resize(t.rows());
  for (int r = 0; r < t.rows(); ++r) {
    result.row_prices[r] = t.objective(t.structural() + r);
  }
  return result;
}

LPSolution solve(const LinearProgram& lp, const SolveOptions& options) {
  lp.validate();
  LPSolution sol;
  const int n = lp.num_vars();
  const int m = lp.num_rows();

  if (m == 0) {
    for (const auto& cj : lp.c) {
      if (sgn(cj) < 0) {
        sol.status = LPStatus::kUnbounded;
        return sol;
      }
    }
    sol.status = LPStatus::kOptimal;
    sol.value = 0;
    sol.x.assign(n, 0);
    return sol;
  }

  // Dual: max b^T y, A^T y <= c, y >= 0. One tableau row per primal variable.
  CanonicalMax dual;
  dual.num_cols = m;
  dual.rows.resize(n);
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, coef] : lp.rows[i]) {
      if (sgn(coef) != 0) dual.rows[j].emplace_back(i, coef);
    }
  }
  dual.q = lp.c;
  dual.p = lp.b;

  CanonicalResult res = solve_canonical(dual, options.on_dual_iterate);
  sol.pivots = res.pivots;
  switch (res.status) {
    case LPStatus::kOptimal:
      sol.status = LPStatus::kOptimal;
      sol.value = res.value;
      sol.y = std::move(res.u);
      sol.x = std::move(res.row_prices);
      return sol;
    case LPStatus::kUnbounded:
      sol.status = LPStatus::kInfeasible;
      return sol;
    case LPStatus::kInfeasible:
      break;
  }

  // Dual infeasible: the primal is unbounded exactly when it is feasible.
  CanonicalMax feasibility;
  feasibility.num_cols = n;
  for (int i = 0; i < m; ++i) {
    SparseRow neg;
    for (const auto& [j, coef] : lp.rows[i]) neg.emplace_back(j, -coef);
    feasibility.rows.push_back(std::move(neg));
    feasibility.q.push_back(-lp.b[i]);
  }
  feasibility.p.assign(n, 0);
  CanonicalResult f = solve_canonical(feasibility);
  sol.pivots += f.pivots;
  sol.status = f.status == LPStatus::kOptimal ? LPStatus::kUnbounded
                                              : LPStatus::kInfeasible;
  return sol;
}

bool verify_certificate(const LinearProgram& lp, const LPSolution& sol) {
  if (sol.status != LPStatus::kOptimal) return false;
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  if (static_cast<int>(sol.x.size()) != n ||
      static_cast<int>(sol.y.size()) != m) {
    return false;
  }
  for (const auto& xj : sol.x) {
    if (sgn(xj) < 0) return false;
  }
  for (const auto& yi : sol.y) {
    if (sgn(yi) < 0) return false;
  }
  std::vector<Rational> reduced = lp.c;  // c - A^T y
  Rational dual_value = 0;
  for (int i = 0; i < m; ++i) {
    Rational lhs = 0;
    for (const auto& [j, coef] : lp.rows[i]) {
      lhs += coef * sol.x[j];
      reduced[j] -= coef * sol.y[i];
    }
    if (lhs < lp.b[i]) return false;
    dual_value += lp.b[i] * sol.y[i];
  }
  Rational primal_value = 0;
  for (int j = 0; j < n; ++j) {
    if (sgn(reduced[j]) < 0) return false;
    primal_value += lp.c[j] * sol.x[j];
  }
  return primal_value == sol.value && dual_value == sol.value;
}

}  // namespace stablerank
