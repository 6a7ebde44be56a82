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

#ifndef STABLERANK_TESTS_ORACLES_H_
#define STABLERANK_TESTS_ORACLES_H_

// Independent reference computations used only by the tests. None of these
// call into the simplex code they are checking.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "stablerank/lp.h"
#include "stablerank/stable_rank.h"
#include "stablerank/tensor.h"

namespace stablerank::testing {

// Minimum of c^T x over all basic feasible points of {A x >= b, x >= 0},
// or nullopt when no vertex is feasible. Exponential; n <= 5.
std::optional<Rational> vertex_enumeration_min(const LinearProgram& lp);

// Exhaustive minimum slice cover over all 2^(sum n_i) 0/1 assignments.
int exhaustive_tslice(const Support& s);

// Largest singular value from a full Hermitian eigendecomposition of M M^H.
double dense_spectral_norm(const Eigen::MatrixXcd& m);

// min over all subspaces W (enumerated as spans of vector subsets) of
// q + dim sum A_k(W) - dim W. Tiny q only.
int span_enumeration_ncrk(const MatrixTuple& a);

Support random_support(std::mt19937_64& rng, int order, int max_dim,
                       int max_size);
SparseTensor random_tensor(std::mt19937_64& rng, const Shape& shape,
                           int max_size);
MatrixTuple random_tuple(std::mt19937_64& rng, std::int64_t p, int rows,
                         int cols, int m);
Eigen::MatrixXcd random_complex(std::mt19937_64& rng, int rows, int cols);
Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n);

}  // namespace stablerank::testing

#endif  // STABLERANK_TESTS_ORACLES_H_
