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

#ifndef STABLERANK_LP_H_
#define STABLERANK_LP_H_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/tensor.h"

namespace stablerank {

// One sparse constraint row: (column, coefficient) pairs.
using SparseRow = std::vector<std::pair<int, Rational>>;

// minimize c^T x  subject to  A x >= b,  x >= 0.
struct LinearProgram {
  std::vector<Rational> c;
  std::vector<SparseRow> rows;
  std::vector<Rational> b;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Throws std::invalid_argument on dimension mismatches.
  void validate() const;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LPStatus status);

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Rational value;
  std::vector<Rational> x;  // primal, one per variable
  std::vector<Rational> y;  // dual, one per constraint
  int pivots = 0;
};

struct SolveOptions {
  // Called with b^T y for every dual-feasible iterate visited on the way to
  // the optimum.
  std::function<void(const Rational&)> on_dual_iterate;
};

// Exact simplex with Bland's rule. The tableau is built on the dual
// max b^T y, A^T y <= c, y >= 0, whose slack prices recover x.
LPSolution solve(const LinearProgram& lp, const SolveOptions& options = {});

// Exact primal/dual feasibility and c^T x == value == b^T y.
bool verify_certificate(const LinearProgram& lp, const LPSolution& sol);

// Lower-level engine: maximize p^T u subject to M u <= q, u >= 0.
// Exposed for tests; `solve` is the intended entry point.
struct CanonicalMax {
  int num_cols = 0;
  std::vector<SparseRow> rows;  // M
  std::vector<Rational> q;
  std::vector<Rational> p;
};

struct CanonicalResult {
  LPStatus status = LPStatus::kInfeasible;
  Rational value;
  std::vector<Rational> u;
  std::vector<Rational> row_prices;  // optimal duals of the M u <= q rows
  int pivots = 0;
};

CanonicalResult solve_canonical(
    const CanonicalMax& problem,
    const std::function<void(const Rational&)>& on_iterate = {});

}  // namespace stablerank

#endif  // STABLERANK_LP_H_
