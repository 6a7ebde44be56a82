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

#ifndef STABLERANK_GRANK_COMPLEX_H_
#define STABLERANK_GRANK_COMPLEX_H_

#include <Eigen/Dense>

#include <vector>

#include "stablerank/stable_rank.h"
#include "stablerank/tensor.h"

namespace stablerank {

using ComplexMatrix = Eigen::MatrixXcd;

// One invertible matrix per mode.
struct GroupElement {
  std::vector<ComplexMatrix> factors;

  static GroupElement identity(const Shape& shape);
  int order() const { return static_cast<int>(factors.size()); }
};

struct LowerBoundReport {
  double bound = 0;
  GroupElement g;
  std::vector<double> ratios;  // alpha_i |g v|^2 / |Phi_i(g v)|_sigma^2 at g
  double stationarity_residual = 0;
  int iterations = 0;
};

ComplexMatrix to_matrix(const FlatMatrix& m);
ComplexMatrix flatten_matrix(const ComplexTensor& v, int mode);

// Largest singular value by power iteration on the smaller Gram matrix.
double spectral_norm(const ComplexMatrix& m);

// Mode-i product: replaces Phi_i(v) by g Phi_i(v).
ComplexTensor mode_product(const ComplexTensor& v, const ComplexMatrix& g,
                           int mode);
ComplexTensor apply(const GroupElement& g, const ComplexTensor& v);

// alpha_i |v|^2 / |Phi_i(v)|_sigma^2 for every mode.
std::vector<double> mode_ratios(const ComplexTensor& v, const Weight& alpha);

// min_i alpha_i |g v|^2 / |Phi_i(g v)|_sigma^2.
double objective(const ComplexTensor& v, const GroupElement& g,
                 const Weight& alpha);

// max_i of the negative part of lambda_min(alpha_i |v|^2 I - r Phi_i Phi_i^H),
// divided by alpha_i |v|^2. Zero iff every such matrix is positive
// semidefinite.
double stationarity_residual(const ComplexTensor& v, const Weight& alpha,
                             double r);

struct AscendOptions {
  int max_iters = 500;
  double tol = 1e-12;
  double step = 0.3;     // blend toward the whitening factor
  double epsilon = 1e-12;  // relative regularizer of Phi Phi^H
};

// Damped mode-wise whitening; reports the best objective seen, which is a
// lower bound on the complex G-stable rank.
LowerBoundReport ascend(const ComplexTensor& v, const Weight& alpha,
                        const AscendOptions& options = {});

struct SandwichOptions {
  AscendOptions ascend;
  SearchOptions search;
};

struct SandwichResult {
  double lower = 0;
  Rational upper;
  LowerBoundReport lower_report;
  UpperBoundResult upper_report;
};

// [ascend lower bound, basis-search upper bound] for a rational tensor.
SandwichResult sandwich(const SparseTensor& v, const Weight& alpha,
                        const SandwichOptions& options = {});

}  // namespace stablerank

#endif  // STABLERANK_GRANK_COMPLEX_H_
