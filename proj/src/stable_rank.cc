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

#include "stablerank/stable_rank.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace stablerank {

SliceIndexer::SliceIndexer(const Shape& shape) : shape_(shape) {
  for (int n : shape.dims()) {
    offsets_.push_back(total_);
    total_ += n;
  }
}

namespace {

void require_weight(const Shape& shape, const Weight& alpha) {
  if (alpha.order() != shape.order()) {
    throw TensorError("weight length " + std::to_string(alpha.order()) +
                      " does not match tensor order " +
                      std::to_string(shape.order()));
  }
}

SliceValues unpack(const SliceIndexer& ix, const std::vector<Rational>& flat) {
  SliceValues out(ix.shape().order());
  for (int i = 0; i < ix.shape().order(); ++i) {
    for (int j = 0; j < ix.shape().dim(i); ++j) {
      out[i].push_back(flat[ix.column(i, j)]);
    }
  }
  return out;
}

SliceValues zeros(const Shape& shape) {
  SliceValues out(shape.order());
  for (int i = 0; i < shape.order(); ++i) out[i].assign(shape.dim(i), 0);
  return out;
}

}  // namespace

LinearProgram build_lp(const Support& support, const Weight& alpha) {
  const Shape& shape = support.shape();
  require_weight(shape, alpha);
  SliceIndexer ix(shape);
  LinearProgram lp;
  lp.c.resize(ix.num_columns());
  for (int i = 0; i < shape.order(); ++i) {
    for (int j = 0; j < shape.dim(i); ++j) lp.c[ix.column(i, j)] = alpha[i];
  }
  for (const auto& s : support.elements()) {
    SparseRow row;
    for (int i = 0; i < shape.order(); ++i) {
      row.emplace_back(ix.column(i, s[i]), Rational(1));
    }
    lp.rows.push_back(std::move(row));
    lp.b.emplace_back(1);
  }
  return lp;
}

TRankResult trank(const Support& support, const Weight& alpha) {
  require_weight(support.shape(), alpha);
  TRankResult result;
  if (support.empty()) {
    result.value = 0;
    result.primal = zeros(support.shape());
    result.certificate_ok = true;
    return result;
  }
  LinearProgram lp = build_lp(support, alpha);
  LPSolution sol = solve(lp);
  if (sol.status != LPStatus::kOptimal) {
    throw std::logic_error("covering LP reported " + to_string(sol.status));
  }
  result.value = sol.value;
  result.primal = unpack(SliceIndexer(support.shape()), sol.x);
  result.dual = sol.y;
  result.certificate_ok = verify_certificate(lp, sol);
  return result;
}

TRankResult dual_trank(const Support& support, const Weight& alpha) {
  const Shape& shape = support.shape();
  require_weight(shape, alpha);
  TRankResult result;
  if (support.empty()) {
    result.value = 0;
    result.primal = zeros(shape);
    result.certificate_ok = true;
    return result;
  }
  // min -sum y  s.t.  -sum_{s_i = j} y(s) >= -alpha_i, one row per slice.
  SliceIndexer ix(shape);
  const std::vector<Index> elements(support.elements().begin(),
                                    support.elements().end());
  LinearProgram lp;
  lp.c.assign(elements.size(), -1);
  lp.rows.resize(ix.num_columns());
  lp.b.resize(ix.num_columns());
  for (int i = 0; i < shape.order(); ++i) {
    for (int j = 0; j < shape.dim(i); ++j) lp.b[ix.column(i, j)] = -alpha[i];
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (int i = 0; i < shape.order(); ++i) {
      lp.rows[ix.column(i, elements[k][i])].emplace_back(static_cast<int>(k),
                                                         Rational(-1));
    }
  }
  LPSolution sol = solve(lp);
  if (sol.status != LPStatus::kOptimal) {
    throw std::logic_error("packing LP reported " + to_string(sol.status));
  }
  result.value = -sol.value;
  result.dual = sol.x;
  result.primal = unpack(ix, sol.y);
  result.certificate_ok = verify_certificate(lp, sol);
  return result;
}

bool check_slackness(const Support& support, const Weight& alpha,
                     const SliceValues& primal,
                     const std::vector<Rational>& dual) {
  const Shape& shape = support.shape();
  require_weight(shape, alpha);
  if (static_cast<int>(primal.size()) != shape.order() ||
      dual.size() != support.size()) {
    return false;
  }
  SliceValues load = zeros(shape);
  std::size_t k = 0;
  for (const auto& s : support.elements()) {
    const Rational& y = dual[k++];
    if (sgn(y) < 0) return false;
    Rational covered = 0;
    for (int i = 0; i < shape.order(); ++i) {
      covered += primal[i][s[i]];
      load[i][s[i]] += y;
    }
    if (covered < 1) return false;
    if (covered != 1 && sgn(y) != 0) return false;
  }
  for (int i = 0; i < shape.order(); ++i) {
    if (static_cast<int>(primal[i].size()) != shape.dim(i)) return false;
    for (int j = 0; j < shape.dim(i); ++j) {
      if (sgn(primal[i][j]) < 0 || load[i][j] > alpha[i]) return false;
      if (load[i][j] != alpha[i] && sgn(primal[i][j]) != 0) return false;
    }
  }
  return true;
}

namespace {

class SliceCoverSearch {
 public:
  SliceCoverSearch(const Support& support)
      : ix_(support.shape()),
        elements_(support.elements().begin(), support.elements().end()),
        fixed_(ix_.num_columns(), -1) {}

  TSliceResult run() {
    seed_incumbent();
    explore();
    TSliceResult result;
    result.value = best_value_;
    result.nodes = nodes_;
    const Shape& shape = ix_.shape();
    result.chosen.resize(shape.order());
    for (int i = 0; i < shape.order(); ++i) {
      for (int j = 0; j < shape.dim(i); ++j) {
        result.chosen[i].push_back(best_[ix_.column(i, j)]);
      }
    }
    return result;
  }

 private:
  // Cheapest single-mode cover: every used coordinate of one mode.
  void seed_incumbent() {
    const Shape& shape = ix_.shape();
    best_value_ = -1;
    for (int i = 0; i < shape.order(); ++i) {
      std::vector<int> pick(ix_.num_columns(), 0);
      int count = 0;
      for (const auto& s : elements_) {
        int& slot = pick[ix_.column(i, s[i])];
        if (!slot) {
          slot = 1;
          ++count;
        }
      }
      if (best_value_ < 0 || count < best_value_) {
        best_value_ = count;
        best_ = pick;
      }
    }
  }

  void explore() {
    ++nodes_;
    int fixed_ones = 0;
    for (int f : fixed_) fixed_ones += (f == 1);
    if (fixed_ones >= best_value_) return;

    std::vector<const Index*> open;
    for (const auto& s : elements_) {
      bool covered = false;
      bool coverable = false;
      for (int i = 0; i < ix_.shape().order(); ++i) {
        const int f = fixed_[ix_.column(i, s[i])];
        covered |= (f == 1);
        coverable |= (f == -1);
      }
      if (covered) continue;
      if (!coverable) return;
      open.push_back(&s);
    }
    if (open.empty()) {
      best_value_ = fixed_ones;
      best_.assign(fixed_.size(), 0);
      for (std::size_t c = 0; c < fixed_.size(); ++c) best_[c] = fixed_[c] == 1;
      return;
    }

    // LP relaxation over the free slices.
    std::vector<int> local(fixed_.size(), -1);
    std::vector<int> global;
    LinearProgram lp;
    for (const Index* s : open) {
      SparseRow row;
      for (int i = 0; i < ix_.shape().order(); ++i) {
        const int col = ix_.column(i, (*s)[i]);
        if (fixed_[col] != -1) continue;
        if (local[col] < 0) {
          local[col] = static_cast<int>(global.size());
          global.push_back(col);
          lp.c.emplace_back(1);
        }
        row.emplace_back(local[col], Rational(1));
      }
      lp.rows.push_back(std::move(row));
      lp.b.emplace_back(1);
    }
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::kOptimal) {
      throw std::logic_error("slice-cover relaxation reported " +
                             to_string(sol.status));
    }
    mpz_class bound;
    mpz_cdiv_q(bound.get_mpz_t(), sol.value.get_num_mpz_t(),
               sol.value.get_den_mpz_t());
    if (fixed_ones + bound >= best_value_) return;

    // Branch on the fractional slice closest to 1/2, lowest column on ties.
    const Rational half = Rational(1) / 2;
    int branch = -1;
    Rational best_gap;
    for (std::size_t k = 0; k < global.size(); ++k) {
      const Rational& x = sol.x[k];
      if (x.get_den() == 1) continue;
      Rational gap = abs(x - half);
      if (branch < 0 || gap < best_gap ||
          (gap == best_gap && global[k] < branch)) {
        branch = global[k];
        best_gap = gap;
      }
    }
    if (branch < 0) {
      // Integral relaxation: it is an optimal cover for this node.
      best_value_ = fixed_ones + static_cast<int>(sol.value.get_num().get_si());
      best_.assign(fixed_.size(), 0);
      for (std::size_t c = 0; c < fixed_.size(); ++c) best_[c] = fixed_[c] == 1;
      for (std::size_t k = 0; k < global.size(); ++k) {
        if (sgn(sol.x[k]) > 0) best_[global[k]] = 1;
      }
      return;
    }
    for (int value : {1, 0}) {
      fixed_[branch] = value;
      explore();
    }
    fixed_[branch] = -1;
  }

  SliceIndexer ix_;
  std::vector<Index> elements_;
  std::vector<int> fixed_;
  std::vector<int> best_;
  int best_value_ = 0;
  int nodes_ = 0;
};

}  // namespace

TSliceResult tslice(const Support& support, const TSliceOptions& options) {
  if (support.shape().slice_count() > options.max_slices) {
    throw ResourceLimitError(
        "tslice: " + std::to_string(support.shape().slice_count()) +
        " slices exceeds the exact limit of " +
        std::to_string(options.max_slices) +
        "; use the LP bound (trank) or grank search as a heuristic instead");
  }
  if (support.empty()) {
    TSliceResult empty;
    const Shape& shape = support.shape();
    empty.chosen.resize(shape.order());
    for (int i = 0; i < shape.order(); ++i) empty.chosen[i].assign(shape.dim(i), 0);
    return empty;
  }
  return SliceCoverSearch(support).run();
}

namespace {

ExactMatrix identity(int n) {
  ExactMatrix m(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool invertible(ExactMatrix m, const ScalarDomain& domain) {
  const int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (sgn(m[r][col]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    std::swap(m[pivot], m[col]);
    const Rational inv = domain.inverse(m[col][col]);
    for (int r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = domain.mul(m[r][col], inv);
      for (int c = col; c < n; ++c) {
        m[r][c] = domain.normalize(m[r][c] - f * m[col][c]);
      }
    }
  }
  return true;
}

class BasisSampler {
 public:
  BasisSampler(const ScalarDomain& domain, std::uint64_t seed)
      : domain_(domain), rng_(seed) {}

  ExactMatrix sample(int n) {
    if (n == 1) return identity(1);
    switch (pick(3)) {
      case 0:
        return permutation(n);
      case 1:
        return transvections(n);
      default:
        return dense(n);
    }
  }

 private:
  int pick(int k) {
    return static_cast<int>(std::uniform_int_distribution<int>(0, k - 1)(rng_));
  }

  Rational small_nonzero() {
    if (domain_.is_rational()) return pick(2) ? Rational(1) : Rational(-1);
    const auto p = static_cast<int>(domain_.prime());
    return Rational(1 + pick(p - 1));
  }

  Rational small_entry() {
    if (domain_.is_rational()) return Rational(pick(3) - 1);
    return Rational(pick(static_cast<int>(domain_.prime())));
  }

  ExactMatrix permutation(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng_);
    ExactMatrix m(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < n; ++i) m[i][perm[i]] = 1;
    return m;
  }

  // Product of one to three elementary transvections I + c E_rs.
  ExactMatrix transvections(int n) {
    ExactMatrix m = identity(n);
    const int count = 1 + pick(3);
    for (int k = 0; k < count; ++k) {
      const int r = pick(n);
      int s = pick(n - 1);
      if (s >= r) ++s;
      const Rational c = small_nonzero();
      // Row operation: row r += c * row s.
      for (int j = 0; j < n; ++j) {
        m[r][j] = domain_.normalize(m[r][j] + c * m[s][j]);
      }
    }
    return m;
  }

  ExactMatrix dense(int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      ExactMatrix m(n, std::vector<Rational>(n));
      for (auto& row : m) {
        for (auto& x : row) x = small_entry();
      }
      if (invertible(m, domain_)) return m;
    }
    return permutation(n);
  }

  ScalarDomain domain_;
  std::mt19937_64 rng_;
};

}  // namespace

SparseTensor apply_basis_change(const SparseTensor& v,
                                const std::vector<ExactMatrix>& g) {
  const Shape& shape = v.shape();
  if (static_cast<int>(g.size()) != shape.order()) {
    throw TensorError("basis change needs one matrix per mode");
  }
  const ScalarDomain& domain = v.domain();
  std::map<Index, Rational> current = v.entries();
  for (int mode = 0; mode < shape.order(); ++mode) {
    const ExactMatrix& m = g[mode];
    if (static_cast<int>(m.size()) != shape.dim(mode)) {
      throw TensorError("basis change matrix has the wrong size");
    }
    std::map<Index, Rational> next;
    for (const auto& [idx, val] : current) {
      Index target = idx;
      for (int r = 0; r < shape.dim(mode); ++r) {
        const Rational& coef = m[r][idx[mode]];
        if (sgn(coef) == 0) continue;
        target[mode] = r;
        Rational& slot = next[target];
        slot = domain.normalize(slot + coef * val);
      }
    }
    current.clear();
    for (auto& [idx, val] : next) {
      if (sgn(val) != 0) current.emplace(idx, std::move(val));
    }
  }
  SparseTensor out(shape, domain);
  for (const auto& [idx, val] : current) out.set(idx, val);
  return out;
}

UpperBoundResult grank_upper_search(const SparseTensor& v, const Weight& alpha,
                                    const SearchOptions& options) {
  const Shape& shape = v.shape();
  require_weight(shape, alpha);
  std::vector<bool> vary = options.vary_mode;
  if (vary.empty()) vary.assign(shape.order(), true);
  if (static_cast<int>(vary.size()) != shape.order()) {
    throw TensorError("vary_mode length does not match tensor order");
  }

  UpperBoundResult result;
  std::map<std::set<Index>, Rational> solved;
  auto consider = [&](const SparseTensor& w) {
    ++result.evaluated;
    Support s = support_of(w);
    auto it = solved.find(s.elements());
    if (it == solved.end()) {
      it = solved.emplace(s.elements(), trank(s, alpha).value).first;
    }
    if (result.evaluated == 1 || it->second < result.value) {
      result.value = it->second;
      result.best_support = s;
    }
  };

  consider(v);
  BasisSampler sampler(v.domain(), options.seed);
  for (int k = 1; k < options.budget; ++k) {
    std::vector<ExactMatrix> g;
    for (int i = 0; i < shape.order(); ++i) {
      g.push_back(vary[i] ? sampler.sample(shape.dim(i))
                          : identity(shape.dim(i)));
    }
    consider(apply_basis_change(v, g));
  }
  result.distinct = static_cast<int>(solved.size());
  return result;
}

void MatrixTuple::validate() const {
  ScalarDomain::modular(prime);
  if (rows < 1 || cols < 1) throw TensorError("matrix tuple: empty matrices");
  if (matrices.empty()) throw TensorError("matrix tuple: no matrices");
  for (const auto& a : matrices) {
    if (static_cast<int>(a.size()) != rows) {
      throw TensorError("matrix tuple: inconsistent row count");
    }
    for (const auto& row : a) {
      if (static_cast<int>(row.size()) != cols) {
        throw TensorError("matrix tuple: inconsistent column count");
      }
    }
  }
}

SparseTensor MatrixTuple::as_tensor() const {
  validate();
  const int m = static_cast<int>(matrices.size());
  SparseTensor t(Shape({rows, cols, m}), ScalarDomain::modular(prime));
  for (int k = 0; k < m; ++k) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        t.set({r, c, k}, Rational(static_cast<long>(matrices[k][r][c])));
      }
    }
  }
  return t;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1;
  std::int64_t base = mod(a, p);
  for (std::int64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

int rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  if (m.empty()) return 0;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    const std::int64_t inv = inverse_mod(m[rank][c], p);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::int64_t f = m[r][c] * inv % p;
      for (int k = c; k < cols; ++k) m[r][k] = mod(m[r][k] - f * m[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

// Number of subspaces of F_p^n, saturating at `cap`.
std::int64_t subspace_count(int n, std::int64_t p, std::int64_t cap) {
  // Gaussian binomials via the recurrence [n,k] = [n-1,k-1] + p^k [n-1,k].
  std::vector<long double> row(1, 1);
  for (int m = 1; m <= n; ++m) {
    std::vector<long double> next(m + 1, 0);
    for (int k = 0; k <= m; ++k) {
      long double a = k > 0 ? row[k - 1] : 0;
      long double b = k < m ? row[k] * std::pow(static_cast<long double>(p), k) : 0;
      next[k] = a + b;
    }
    row = std::move(next);
  }
  long double total = 0;
  for (auto x : row) total += x;
  return total > static_cast<long double>(cap) ? cap + 1
                                               : static_cast<std::int64_t>(total);
}

}  // namespace

int ncrk_bruteforce(const MatrixTuple& a, const NcrkOptions& options) {
  a.validate();
  const std::int64_t p = a.prime;
  const int q = a.cols;
  const std::int64_t count = subspace_count(q, p, options.max_generators);
  if (count > options.max_generators) {
    throw ResourceLimitError("ncrk: F_" + std::to_string(p) + "^" +
                             std::to_string(q) + " has more than " +
                             std::to_string(options.max_generators) +
                             " subspaces");
  }

  int best = q;  // W = 0
  std::vector<int> pivots;
  // Image dimension of W spanned by the rows of `basis`.
  auto image_rank = [&](const std::vector<std::vector<std::int64_t>>& basis) {
    std::vector<std::vector<std::int64_t>> images;
    for (const auto& m : a.matrices) {
      for (const auto& w : basis) {
        std::vector<std::int64_t> img(a.rows, 0);
        for (int r = 0; r < a.rows; ++r) {
          std::int64_t acc = 0;
          for (int c = 0; c < q; ++c) acc = mod(acc + m[r][c] * w[c], p);
          img[r] = acc;
        }
        images.push_back(std::move(img));
      }
    }
    return rank_mod(std::move(images), p);
  };

  // Reduced row echelon generators: choose pivot columns, then every filling
  // of the free positions right of each pivot.
  for (int k = 1; k <= q; ++k) {
    std::vector<bool> mask(q, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      pivots.clear();
      for (int c = 0; c < q; ++c) {
        if (mask[c]) pivots.push_back(c);
      }
      std::vector<std::pair<int, int>> free;
      for (int r = 0; r < k; ++r) {
        for (int c = pivots[r] + 1; c < q; ++c) {
          if (!mask[c]) free.emplace_back(r, c);
        }
      }
      std::vector<std::int64_t> digits(free.size(), 0);
      while (true) {
        std::vector<std::vector<std::int64_t>> basis(
            k, std::vector<std::int64_t>(q, 0));
        for (int r = 0; r < k; ++r) basis[r][pivots[r]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) {
          basis[free[f].first][free[f].second] = digits[f];
        }
        best = std::min(best, q + image_rank(basis) - k);
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return best;
}

NcrkSearchResult ncrk_via_grank(const MatrixTuple& a, int budget,
                                std::uint64_t seed) {
  SparseTensor t = a.as_tensor();
  NcrkSearchResult result;
  if (t.entries().empty()) {
    result.upper_bound = 0;
    return result;
  }
  const long ell = std::min(a.rows, a.cols);
  Weight alpha({Rational(1), Rational(1), Rational(ell)});
  SearchOptions options;
  options.budget = budget;
  options.seed = seed;
  options.vary_mode = {true, true, false};
  UpperBoundResult ub = grank_upper_search(t, alpha, options);
  result.upper_bound = ub.value;
  result.evaluated = ub.evaluated;
  mpz_class floor;
  mpz_fdiv_q(floor.get_mpz_t(), ub.value.get_num_mpz_t(),
             ub.value.get_den_mpz_t());
  result.value = static_cast<int>(floor.get_si());
  return result;
}

}  // namespace stablerank
