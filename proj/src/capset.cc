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

#include "stablerank/capset.h"

#include <cmath>
#include <stdexcept>

#include "stablerank/lp.h"
#include "stablerank/stable_rank.h"

namespace stablerank::capset {

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

mpz_class floor_of(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class prefix_sum(const TrinomialRow& row, int last) {
  mpz_class s = 0;
  for (int i = 0; i <= last && i < static_cast<int>(row.f.size()); ++i) {
    s += row.f[i];
  }
  return s;
}

int floor_div3(int a) { return a >= 0 ? a / 3 : -((-a + 2) / 3); }

}  // namespace

TrinomialRow trinomial(int n) {
  require_positive(n, "trinomial");
  TrinomialRow row;
  row.n = n;
  row.f = {1};
  for (int step = 0; step < n; ++step) {
    std::vector<mpz_class> next(row.f.size() + 2, 0);
    for (std::size_t i = 0; i < row.f.size(); ++i) {
      next[i] += row.f[i];
      next[i + 1] += row.f[i];
      next[i + 2] += row.f[i];
    }
    row.f = std::move(next);
  }
  return row;
}

CapsetLPResult reduced_lp(int n, const Rational& alpha_scale) {
  require_positive(n, "reduced_lp");
  if (sgn(alpha_scale) <= 0) {
    throw std::invalid_argument("reduced_lp: alpha_scale must be positive");
  }
  const TrinomialRow row = trinomial(n);
  const int vars = 2 * n + 1;
  LinearProgram lp;
  for (int i = 0; i < vars; ++i) lp.c.push_back(3 * alpha_scale * Rational(row.f[i]));
  for (int i = 0; i < vars; ++i) {
    for (int j = i; j < vars; ++j) {
      for (int k = j; i + j + k <= 2 * n; ++k) {
        std::vector<int> count(vars, 0);
        ++count[i];
        ++count[j];
        ++count[k];
        SparseRow r;
        for (int v : {i, j, k}) {
          if (count[v] > 0) {
            r.emplace_back(v, Rational(count[v]));
            count[v] = 0;
          }
        }
        lp.rows.push_back(std::move(r));
        lp.b.emplace_back(1);
      }
    }
  }
  LPSolution sol = solve(lp);
  if (sol.status != LPStatus::kOptimal) {
    throw std::logic_error("reduced cap-set LP reported " + to_string(sol.status));
  }
  CapsetLPResult result;
  result.n = n;
  result.t = sol.x;
  result.value = sol.value;
  result.bound = floor_of(sol.value);
  result.certificate_ok = verify_certificate(lp, sol);
  return result;
}

mpz_class capset_bound(int n) { return reduced_lp(n).bound; }

mpz_class eg_bound(int n) {
  require_positive(n, "eg_bound");
  return 3 * prefix_sum(trinomial(n), (2 * n) / 3);
}

mpz_class eg_prime_bound(int n) {
  require_positive(n, "eg_prime_bound");
  const TrinomialRow row = trinomial(n);
  return prefix_sum(row, (2 * n) / 3) + prefix_sum(row, (2 * n - 1) / 3) +
         prefix_sum(row, (2 * n - 2) / 3);
}

std::vector<Rational> conjectured_t(int n) {
  if (n < 1) throw std::invalid_argument("conjectured_t: n must be >= 1");
  std::vector<Rational> tail;
  int prefix = 0;
  switch (n % 3) {
    case 0:
      prefix = floor_div3(2 * n - 3);
      tail = {Rational(2, 3), Rational(1, 3)};
      break;
    case 1:
      prefix = floor_div3(2 * n - 5);
      tail = {Rational(3, 4), Rational(1, 2), Rational(1, 4)};
      break;
    default:
      prefix = floor_div3(2 * n - 7);
      tail = {Rational(4, 5), Rational(3, 5), Rational(2, 5), Rational(1, 5)};
      break;
  }
  std::vector<Rational> t;
  for (int i = 0; i < prefix; ++i) t.emplace_back(1);
  const std::size_t skip = prefix < 0 ? static_cast<std::size_t>(-prefix) : 0;
  if (skip > tail.size()) {
    throw std::invalid_argument("conjectured_t: n too small for the pattern");
  }
  t.insert(t.end(), tail.begin() + static_cast<std::ptrdiff_t>(skip), tail.end());
  t.resize(2 * n + 1, Rational(0));
  for (auto& x : t) x.canonicalize();
  return t;
}

bool reduced_feasible(int n, const std::vector<Rational>& t) {
  const int vars = 2 * n + 1;
  if (static_cast<int>(t.size()) != vars) return false;
  for (const auto& x : t) {
    if (sgn(x) < 0) return false;
  }
  for (int i = 0; i < vars; ++i) {
    for (int j = i; j < vars; ++j) {
      for (int k = j; i + j + k <= 2 * n; ++k) {
        if (t[i] + t[j] + t[k] < 1) return false;
      }
    }
  }
  return true;
}

Rational reduced_objective(int n, const std::vector<Rational>& t) {
  const TrinomialRow row = trinomial(n);
  if (t.size() != row.f.size()) {
    throw std::invalid_argument("reduced_objective: t has the wrong length");
  }
  Rational s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s += Rational(row.f[i]) * t[i];
  return 3 * s;
}

ConjectureReport verify_conjecture(int n) {
  ConjectureReport report;
  report.n = n;
  const std::vector<Rational> t = conjectured_t(n);
  report.feasible = reduced_feasible(n, t);
  report.conjecture_value = reduced_objective(n, t);
  report.lp_value = reduced_lp(n).value;
  report.matches = report.feasible && report.conjecture_value == report.lp_value;
  return report;
}

Support base_support() {
  return Support(Shape({3, 3, 3}), {{0, 0, 0},
                                    {2, 0, 0},
                                    {0, 2, 0},
                                    {0, 0, 2},
                                    {0, 1, 1},
                                    {1, 0, 1},
                                    {1, 1, 0}});
}

SparseTensor base_tensor() {
  // 1 - (x+y+z)^2 = 1 - x^2 - y^2 - z^2 + 2(xy + yz + zx) and 2 = -1 in F_3;
  // the cross terms carry coefficient -2 = 1.
  SparseTensor v(Shape({3, 3, 3}), ScalarDomain::modular(3));
  v.set({0, 0, 0}, 1);
  v.set({2, 0, 0}, -1);
  v.set({0, 2, 0}, -1);
  v.set({0, 0, 2}, -1);
  v.set({0, 1, 1}, 1);
  v.set({1, 0, 1}, 1);
  v.set({1, 1, 0}, 1);
  return v;
}

Rational full_capset_lp(int n) {
  if (n < 1 || n > 3) {
    throw ResourceLimitError("full_capset_lp supports 1 <= n <= 3");
  }
  Support s = base_support();
  Support power = s;
  for (int k = 1; k < n; ++k) power = boxtimes(power, s);
  return trank(power, Weight::ones(3)).value;
}

double theta() {
  return 3.0 / 8.0 * std::cbrt(207.0 + 33.0 * std::sqrt(33.0));
}

std::vector<AsymptoticRow> asymptotic_report(int n_max) {
  if (n_max < 1 || n_max > 60) {
    throw std::invalid_argument("asymptotic_report: n_max must be in [1, 60]");
  }
  std::vector<AsymptoticRow> rows;
  const double th = theta();
  for (int n = 1; n <= n_max; ++n) {
    AsymptoticRow r;
    r.n = n;
    r.bound = capset_bound(n);
    r.ratio = r.bound.get_d() * std::sqrt(static_cast<double>(n)) /
              std::pow(th, n);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace stablerank::capset
