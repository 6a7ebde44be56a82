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

#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "stablerank/stable_rank.h"

namespace stablerank {
namespace {

using testing::w_support;
using testing::w_tensor;

std::vector<Support> random_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Support> out;
  while (static_cast<int>(out.size()) < count) {
    const int order = 3 + static_cast<int>(out.size() % 3);
    out.push_back(testing::random_support(rng, order, 4, 15));
  }
  return out;
}

Support capset_n1_support() {
  return Support(Shape({3, 3, 3}), {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                                    {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

TEST_CASE("W-support LP") {
  const LinearProgram lp = build_lp(w_support(), Weight::ones(3));
  CHECK(lp.num_vars() == 6);
  CHECK(lp.num_rows() == 3);
  const TRankResult r = trank(w_support(), Weight::ones(3));
  CHECK(r.value == Rational(3, 2));
  CHECK(r.certificate_ok);
  const TRankResult d = dual_trank(w_support(), Weight::ones(3));
  CHECK(d.value == Rational(3, 2));
  CHECK(d.dual == std::vector<Rational>(3, Rational(1, 2)));
  CHECK(check_slackness(w_support(), Weight::ones(3), r.primal, d.dual));
}

TEST_CASE("suboptimal primal fails slackness") {
  SliceValues ones(3, std::vector<Rational>(2, 1));
  const TRankResult d = dual_trank(w_support(), Weight::ones(3));
  CHECK_FALSE(check_slackness(w_support(), Weight::ones(3), ones, d.dual));
}

TEST_CASE("single element gives the smallest weight") {
  const Support s(Shape({2, 3, 2}), {{0, 0, 0}});
  const Weight alpha({Rational(3), Rational(1, 2), Rational(2)});
  CHECK(build_lp(s, alpha).num_rows() == 1);
  CHECK(trank(s, alpha).value == Rational(1, 2));
  CHECK(tslice(s).value == 1);
}

TEST_CASE("cap-set n=1 support") {
  const Support s = capset_n1_support();
  const LinearProgram lp = build_lp(s, Weight::ones(3));
  CHECK(lp.num_vars() == 9);
  CHECK(lp.num_rows() == 7);
  CHECK(trank(s, Weight::ones(3)).value == Rational(9, 4));
  const TRankResult d = dual_trank(s, Weight::ones(3));
  CHECK(d.value == Rational(9, 4));
  // Sorted support order puts (0,0,0) first and the two-twos before the ones.
  SliceValues x(3, {Rational(1, 2), Rational(1, 4), 0});
  std::vector<Rational> y;
  for (const auto& e : s.elements()) {
    const int twos = std::count(e.begin(), e.end(), 2);
    const int ones = std::count(e.begin(), e.end(), 1);
    y.push_back(twos ? Rational(1, 4) : ones ? Rational(1, 2) : Rational(0));
  }
  CHECK(check_slackness(s, Weight::ones(3), x, y));
}

TEST_CASE("empty support") {
  const Support s(Shape({2, 2, 2}));
  CHECK(trank(s, Weight::ones(3)).value == 0);
  CHECK(dual_trank(s, Weight::ones(3)).value == 0);
  CHECK(tslice(s).value == 0);
}

TEST_CASE("weight order is checked") {
  CHECK_THROWS_AS(trank(w_support(), Weight::ones(2)), TensorError);
}

TEST_CASE("tslice on the W-support") {
  const TSliceResult r = tslice(w_support());
  CHECK(r.value == 2);
  int chosen = 0;
  for (const auto& mode : r.chosen) chosen += std::accumulate(mode.begin(), mode.end(), 0);
  CHECK(chosen == 2);
}

TEST_CASE("tslice refuses oversized supports") {
  const Support s(Shape({30, 30}), {{0, 0}, {1, 1}});
  TSliceOptions opts;
  opts.max_slices = 40;
  CHECK_THROWS_AS(tslice(s, opts), ResourceLimitError);
}

TEST_CASE("strong duality and certificates on random supports") {
  for (const Support& s : random_corpus(1, 120)) {
    const Weight alpha = Weight::ones(s.order());
    const TRankResult p = trank(s, alpha);
    const TRankResult d = dual_trank(s, alpha);
    CHECK(p.value == d.value);
    CHECK(p.certificate_ok);
    CHECK(d.certificate_ok);
    CHECK(check_slackness(s, alpha, p.primal, d.dual));
  }
}

TEST_CASE("rank inequalities on random supports") {
  for (const Support& s : random_corpus(2, 120)) {
    const int d = s.order();
    const Rational t = trank(s, Weight::ones(d)).value;
    const int sl = tslice(s).value;
    CHECK(Rational(2) / d * sl <= t);
    CHECK(t <= sl);
    CHECK(t >= 1);
    CHECK(trank(s, Weight::inverse_dims(s.shape())).value <= 1);
  }
}

TEST_CASE("weighted floor") {
  std::mt19937_64 rng(3);
  for (const Support& s : random_corpus(3, 60)) {
    std::vector<Rational> a;
    for (int i = 0; i < s.order(); ++i) {
      a.push_back(Rational(std::uniform_int_distribution<int>(1, 5)(rng)) /
                  Rational(std::uniform_int_distribution<int>(1, 3)(rng)));
    }
    const Weight alpha(a);
    CHECK(trank(s, alpha).value >= alpha.min());
  }
}

TEST_CASE("rank depends only on the support") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const SparseTensor v =
        testing::random_tensor(rng, Shape({3, 2, 3}), 8);
    SparseTensor w(v.shape(), v.domain());
    for (const auto& [idx, val] : v.entries()) w.set(idx, val * (trial + 2));
    CHECK(trank(support_of(v), Weight::ones(3)).value ==
          trank(support_of(w), Weight::ones(3)).value);
  }
}

TEST_CASE("block additivity") {
  const auto corpus = random_corpus(5, 60);
  for (std::size_t k = 0; k + 1 < corpus.size(); ++k) {
    const Support& s = corpus[k];
    Support t = corpus[k + 1];
    if (t.order() != s.order()) continue;
    const Weight alpha = Weight::ones(s.order());
    CHECK(trank(boxplus(s, t), alpha).value ==
          trank(s, alpha).value + trank(t, alpha).value);
  }
}

TEST_CASE("supermultiplicativity through the product dual") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const Support s = testing::random_support(rng, 3, 3, 6);
    const Support t = testing::random_support(rng, 3, 3, 6);
    const Weight alpha({Rational(1), Rational(2), Rational(1, 2)});
    const Weight beta = Weight::ones(3);
    const TRankResult ds = dual_trank(s, alpha);
    const TRankResult dt = dual_trank(t, beta);

    // Y(a, b) = y(a) y'(b) loads slice (i, a_i n'_i + b_i) with the product
    // of the factor loads, so it is feasible for the product weights.
    const Support st = boxtimes(s, t);
    const Weight ab = alpha * beta;
    std::vector<std::map<int, Rational>> load(3);
    Rational total = 0;
    std::size_t i = 0;
    for (const auto& a : s.elements()) {
      std::size_t j = 0;
      for (const auto& b : t.elements()) {
        const Rational y = ds.dual[i] * dt.dual[j++];
        total += y;
        for (int m = 0; m < 3; ++m) load[m][a[m] * t.shape().dim(m) + b[m]] += y;
      }
      ++i;
    }
    for (int m = 0; m < 3; ++m) {
      for (const auto& [slice, y] : load[m]) CHECK(y <= ab[m]);
    }
    CHECK(total == ds.value * dt.value);
    CHECK(trank(st, ab).value >= total);
  }
}

TEST_CASE("horizontal product is the minimum") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Support s = testing::random_support(rng, 2 + trial % 2, 3, 5);
    const Support t = testing::random_support(rng, 3, 3, 5);
    const Weight a = Weight::inverse_dims(s.shape());
    const Weight b = Weight::ones(3);
    const Rational expected = std::min(trank(s, a).value, trank(t, b).value);
    CHECK(trank(outer(s, t), concat(a, b)).value == expected);
  }
}

TEST_CASE("integer-scaled optimal primal has slope equal to the rank") {
  for (const Support& s : random_corpus(8, 60)) {
    const Weight alpha = Weight::ones(s.order());
    const TRankResult r = trank(s, alpha);
    mpz_class lcm = 1;
    for (const auto& mode : r.primal) {
      for (const auto& x : mode) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    OnePSGWeights w;
    for (const auto& mode : r.primal) {
      std::vector<std::int64_t> row;
      for (const auto& x : mode) {
        const Rational scaled = x * lcm;
        row.push_back(scaled.get_num().get_si());
      }
      w.x.push_back(row);
    }
    CHECK(psg_slope(w, s, alpha) == r.value);
  }
}

TEST_CASE("tslice matches exhaustive search") {
  std::mt19937_64 rng(9);
  int checked = 0;
  while (checked < 150) {
    const int order = std::uniform_int_distribution<int>(2, 4)(rng);
    const Support s = testing::random_support(rng, order, 4, 12);
    if (s.shape().slice_count() > 12) continue;
    CHECK(tslice(s).value == testing::exhaustive_tslice(s));
    ++checked;
  }
}

TEST_CASE("basis search upper bounds") {
  CHECK(grank_upper_search(w_tensor(), Weight::ones(3)).value == Rational(3, 2));
  const UpperBoundResult diag =
      grank_upper_search(testing::diagonal_tensor(2), Weight::ones(3));
  CHECK(diag.value == 2);
  CHECK(diag.evaluated == 200);
  const Weight alpha({Rational(2), Rational(3, 4), Rational(1)});
  CHECK(grank_upper_search(testing::rank_one_tensor(), alpha).value ==
        Rational(3, 4));
}

TEST_CASE("basis search is deterministic in the seed") {
  SearchOptions opts;
  opts.seed = 17;
  opts.budget = 60;
  const SparseTensor v = testing::diagonal_tensor(3);
  const auto a = grank_upper_search(v, Weight::ones(3), opts);
  const auto b = grank_upper_search(v, Weight::ones(3), opts);
  CHECK(a.value == b.value);
  CHECK(a.distinct == b.distinct);
  CHECK(a.best_support == b.best_support);
}

TEST_CASE("identity basis change") {
  const SparseTensor v = testing::rank_one_tensor();
  std::vector<ExactMatrix> g;
  for (int n : v.shape().dims()) {
    ExactMatrix m(n, std::vector<Rational>(n, 0));
    for (int k = 0; k < n; ++k) m[k][k] = 1;
    g.push_back(m);
  }
  CHECK(apply_basis_change(v, g).entries() == v.entries());
}

MatrixTuple singleton(std::vector<std::vector<std::int64_t>> m) {
  MatrixTuple a;
  a.prime = 2;
  a.rows = static_cast<int>(m.size());
  a.cols = static_cast<int>(m[0].size());
  a.matrices = {m};
  return a;
}

TEST_CASE("non-commutative rank examples") {
  const MatrixTuple id = singleton({{1, 0}, {0, 1}});
  const MatrixTuple e11 = singleton({{1, 0}, {0, 0}});
  const MatrixTuple zero = singleton({{0, 0}, {0, 0}});
  CHECK(ncrk_bruteforce(id) == 2);
  CHECK(ncrk_bruteforce(e11) == 1);
  CHECK(ncrk_bruteforce(zero) == 0);
  CHECK(ncrk_via_grank(id, 50, 0).value == 2);
  CHECK(ncrk_via_grank(e11, 50, 0).value == 1);
  CHECK(ncrk_via_grank(zero, 50, 0).value == 0);

  MatrixTuple all;
  all.prime = 2;
  all.rows = all.cols = 2;
  all.matrices = {{{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{0, 0}, {1, 0}},
                  {{0, 0}, {0, 1}}};
  CHECK(ncrk_bruteforce(all) == 2);
}

TEST_CASE("brute-force ncrk matches span enumeration") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const int q = 2 + trial % 3;
    const int rows = std::uniform_int_distribution<int>(1, 3)(rng);
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const MatrixTuple a = testing::random_tuple(rng, 2, rows, q, m);
    CHECK(ncrk_bruteforce(a) == testing::span_enumeration_ncrk(a));
  }
}

TEST_CASE("ncrk enumeration limit") {
  MatrixTuple a;
  a.prime = 3;
  a.rows = a.cols = 8;
  a.matrices = {std::vector<std::vector<std::int64_t>>(8, std::vector<std::int64_t>(8, 1))};
  NcrkOptions opts;
  opts.max_generators = 1000;
  CHECK_THROWS_AS(ncrk_bruteforce(a, opts), ResourceLimitError);
}

TEST_CASE("matrix tuple validation") {
  MatrixTuple a = singleton({{1, 0}, {0, 1}});
  a.matrices.push_back({{1, 0, 0}});
  CHECK_THROWS_AS(a.validate(), TensorError);
  MatrixTuple b = singleton({{1}});
  b.prime = 6;
  CHECK_THROWS_AS(b.validate(), TensorError);
}

}  // namespace
}  // namespace stablerank
