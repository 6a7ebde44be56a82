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

#ifndef STABLERANK_STABLE_RANK_H_
#define STABLERANK_STABLE_RANK_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stablerank/lp.h"
#include "stablerank/tensor.h"

namespace stablerank {

// Raised when an input exceeds a configured enumeration or size limit.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variable layout of the covering LP: slice (mode, j) is column
// offset[mode] + j.
class SliceIndexer {
 public:
  explicit SliceIndexer(const Shape& shape);
  int column(int mode, int j) const { return offsets_[mode] + j; }
  int num_columns() const { return total_; }
  const Shape& shape() const { return shape_; }

 private:
  Shape shape_;
  std::vector<int> offsets_;
  int total_ = 0;
};

// Per-slice values x[mode][j].
using SliceValues = std::vector<std::vector<Rational>>;

struct TRankResult {
  Rational value;
  SliceValues primal;
  // y(s), aligned with the sorted elements of the support.
  std::vector<Rational> dual;
  bool certificate_ok = false;
};

struct TSliceResult {
  int value = 0;
  std::vector<std::vector<int>> chosen;  // x'[mode][j] in {0, 1}
  int nodes = 0;
};

// min sum_i alpha_i sum_j x(i,j)  s.t.  sum_i x(i, s_i) >= 1 for s in S.
LinearProgram build_lp(const Support& support, const Weight& alpha);

TRankResult trank(const Support& support, const Weight& alpha);

// Solves max sum_s y(s) s.t. sum_{s_i = j} y(s) <= alpha_i as its own LP.
TRankResult dual_trank(const Support& support, const Weight& alpha);

// Primal and dual feasibility plus both complementary-slackness families.
bool check_slackness(const Support& support, const Weight& alpha,
                     const SliceValues& primal, const std::vector<Rational>& dual);

struct TSliceOptions {
  int max_slices = 40;
};

// Minimum 0/1 slice cover by LP-based branch and bound.
TSliceResult tslice(const Support& support, const TSliceOptions& options = {});

struct SearchOptions {
  int budget = 200;
  std::uint64_t seed = 0;
  // Modes whose basis may change; empty means every mode.
  std::vector<bool> vary_mode;
};

struct UpperBoundResult {
  Rational value;
  int evaluated = 0;     // basis changes tried, identity included
  int distinct = 0;      // distinct supports solved
  Support best_support;  // support attaining the bound
};

// min over sampled invertible g of trank(supp(g v), alpha); an upper bound on
// the G-stable rank.
UpperBoundResult grank_upper_search(const SparseTensor& v, const Weight& alpha,
                                    const SearchOptions& options = {});

// g v for a per-mode list of square matrices over the tensor's domain.
using ExactMatrix = std::vector<std::vector<Rational>>;
SparseTensor apply_basis_change(const SparseTensor& v,
                                const std::vector<ExactMatrix>& g);

// m matrices of size rows x cols over F_p.
struct MatrixTuple {
  std::int64_t prime = 2;
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::vector<std::int64_t>>> matrices;

  void validate() const;
  // T_A = sum_k A_k (x) e_k as a rows x cols x m tensor over F_p.
  SparseTensor as_tensor() const;
};

struct NcrkOptions {
  std::int64_t max_generators = std::int64_t{1} << 20;  // cap on the subspace count
};

// min over subspaces W of F_p^cols of cols + dim sum_k A_k(W) - dim W.
int ncrk_bruteforce(const MatrixTuple& a, const NcrkOptions& options = {});

struct NcrkSearchResult {
  int value = 0;
  Rational upper_bound;  // search value before rounding down
  int evaluated = 0;
};

// floor of grank_upper_search(T_A, (1, 1, min(rows, cols))), varying only
// the row and column bases.
NcrkSearchResult ncrk_via_grank(const MatrixTuple& a, int budget,
                                std::uint64_t seed);

}  // namespace stablerank

#endif  // STABLERANK_STABLE_RANK_H_
