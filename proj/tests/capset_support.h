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

#ifndef STABLERANK_TESTS_CAPSET_SUPPORT_H_
#define STABLERANK_TESTS_CAPSET_SUPPORT_H_

#include <vector>

#include "stablerank/lp.h"

namespace stablerank::testing {

// Covering LP of the seven-element support {(0,0,0), (2,0,0), (0,2,0),
// (0,0,2), (0,1,1), (1,0,1), (1,1,0)} written out by hand. Column 3i+j is
// x(i, j).
inline LinearProgram capset_n1_lp() {
  const int triples[7][3] = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                             {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  LinearProgram lp;
  lp.c.assign(9, 1);
  for (const auto& t : triples) {
    lp.rows.push_back({{t[0], 1}, {3 + t[1], 1}, {6 + t[2], 1}});
    lp.b.emplace_back(1);
  }
  return lp;
}

inline std::vector<Rational> capset_n1_primal() {
  const Rational h(1, 2), q(1, 4);
  return {h, q, 0, h, q, 0, h, q, 0};
}

inline std::vector<Rational> capset_n1_dual() {
  const Rational h(1, 2), q(1, 4);
  return {0, q, q, q, h, h, h};
}

}  // namespace stablerank::testing

#endif  // STABLERANK_TESTS_CAPSET_SUPPORT_H_
