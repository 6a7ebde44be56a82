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

#ifndef STABLERANK_TESTS_FIXTURES_H_
#define STABLERANK_TESTS_FIXTURES_H_

#include <vector>

#include "stablerank/tensor.h"

namespace stablerank::testing {

// e_1 (x) e_0 (x) e_0 + e_0 (x) e_1 (x) e_0 + e_0 (x) e_0 (x) e_1.
inline SparseTensor w_tensor() {
  SparseTensor v(Shape({2, 2, 2}), ScalarDomain::rational());
  v.set({1, 0, 0}, 1);
  v.set({0, 1, 0}, 1);
  v.set({0, 0, 1}, 1);
  return v;
}

inline Support w_support() { return support_of(w_tensor()); }

// sum_{k<r} e_k (x) e_k (x) e_k.
inline SparseTensor diagonal_tensor(int r, int order = 3) {
  SparseTensor v(Shape(std::vector<int>(order, r)), ScalarDomain::rational());
  for (int k = 0; k < r; ++k) v.set(Index(order, k), 1);
  return v;
}

inline SparseTensor rank_one_tensor() {
  SparseTensor a(Shape({2}), ScalarDomain::rational());
  a.set({0}, 1);
  a.set({1}, 2);
  SparseTensor b(Shape({3}), ScalarDomain::rational());
  b.set({0}, 1);
  b.set({2}, -1);
  SparseTensor c(Shape({2}), ScalarDomain::rational());
  c.set({0}, 5);
  c.set({1}, 1);
  return outer(outer(a, b), c);
}

}  // namespace stablerank::testing

#endif  // STABLERANK_TESTS_FIXTURES_H_
