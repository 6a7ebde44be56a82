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

#ifndef STABLERANK_CAPSET_H_
#define STABLERANK_CAPSET_H_

#include <gmpxx.h>

#include <vector>

#include "stablerank/tensor.h"

namespace stablerank::capset {

// Coefficients of (1 + x + x^2)^n.
struct TrinomialRow {
  int n = 0;
  std::vector<mpz_class> f;  // length 2n + 1
};

TrinomialRow trinomial(int n);

struct CapsetLPResult {
  int n = 0;
  std::vector<Rational> t;  // length 2n + 1
  Rational value;           // 3 * alpha_scale * sum_i f_{n,i} t_i
  mpz_class bound;          // floor(value)
  bool certificate_ok = false;
};

// min 3 sum f_{n,i} t_i  s.t.  t_i + t_j + t_k >= 1 for i <= j <= k,
// i + j + k <= 2n, t >= 0.
CapsetLPResult reduced_lp(int n, const Rational& alpha_scale = 1);

// floor(reduced_lp(n).value).
mpz_class capset_bound(int n);

// 3 sum_{i <= floor(2n/3)} f_{n,i}.
mpz_class eg_bound(int n);

// Sum of the three prefix sums up to floor(2n/3), floor((2n-1)/3),
// floor((2n-2)/3).
mpz_class eg_prime_bound(int n);

// Ones followed by the residue-class tail, zero padded to length 2n + 1.
// For n = 1, 2 the ones prefix has length -1, which drops the first entry of
// the tail.
std::vector<Rational> conjectured_t(int n);

// Exact check of t >= 0 and every reduced constraint.
bool reduced_feasible(int n, const std::vector<Rational>& t);

// 3 sum f_{n,i} t_i.
Rational reduced_objective(int n, const std::vector<Rational>& t);

struct ConjectureReport {
  int n = 0;
  bool feasible = false;
  Rational conjecture_value;
  Rational lp_value;
  bool matches = false;
};

ConjectureReport verify_conjecture(int n);

// Support of v_1 in the basis <1>, <x>, <x^2> (degree indices 0, 1, 2).
Support base_support();
// v_1 as an F_3 tensor in the same basis.
SparseTensor base_tensor();

// trank of the n-fold vertical power of base_support() with alpha = (1,1,1).
Rational full_capset_lp(int n);

struct AsymptoticRow {
  int n = 0;
  mpz_class bound;
  double ratio = 0;  // bound * sqrt(n) / theta^n
};

double theta();
std::vector<AsymptoticRow> asymptotic_report(int n_max);

}  // namespace stablerank::capset

#endif  // STABLERANK_CAPSET_H_
