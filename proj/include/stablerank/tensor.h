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

#ifndef STABLERANK_TENSOR_H_
#define STABLERANK_TENSOR_H_

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablerank {

using Rational = mpq_class;
using Index = std::vector<int>;

// Thrown for malformed shapes, indices and mismatched operands.
class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> dims);

  int order() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const { return dims_.at(mode); }
  const std::vector<int>& dims() const { return dims_; }
  // Product of all dims.
  std::int64_t size() const;
  // Sum of all dims, i.e. the number of slices.
  int slice_count() const;
  bool contains(const Index& idx) const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> dims_;
};

std::string to_string(const Shape& shape);

// The set of index tuples of nonzero entries.
class Support {
 public:
  Support() = default;
  explicit Support(Shape shape) : shape_(std::move(shape)) {}
  Support(Shape shape, const std::vector<Index>& elements);

  const Shape& shape() const { return shape_; }
  const std::set<Index>& elements() const { return elements_; }
  int order() const { return shape_.order(); }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  void insert(const Index& idx);

  friend bool operator==(const Support&, const Support&) = default;

 private:
  Shape shape_;
  std::set<Index> elements_;
};

// Exact scalar field: the rationals, or the integers modulo a prime.
class ScalarDomain {
 public:
  static ScalarDomain rational() { return ScalarDomain(0); }
  static ScalarDomain modular(std::int64_t prime);

  bool is_rational() const { return prime_ == 0; }
  std::int64_t prime() const { return prime_; }

  // Canonical representative: unchanged for Q, in [0, p) for F_p.
  Rational normalize(const Rational& x) const;
  Rational add(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational inverse(const Rational& a) const;

  std::string name() const;
  static ScalarDomain parse(const std::string& text);

  friend bool operator==(const ScalarDomain&, const ScalarDomain&) = default;

 private:
  explicit ScalarDomain(std::int64_t prime) : prime_(prime) {}
  std::int64_t prime_ = 0;
};

class SparseTensor {
 public:
  SparseTensor(Shape shape, ScalarDomain domain);

  const Shape& shape() const { return shape_; }
  const ScalarDomain& domain() const { return domain_; }
  const std::map<Index, Rational>& entries() const { return entries_; }
  int order() const { return shape_.order(); }

  // Accumulates into the entry at idx; entries that become zero are erased.
  void add(const Index& idx, const Rational& value);
  void set(const Index& idx, const Rational& value);
  Rational at(const Index& idx) const;

 private:
  Shape shape_;
  ScalarDomain domain_;
  std::map<Index, Rational> entries_;
};

// Dense tensor of complex doubles, row-major with the last mode fastest.
class ComplexTensor {
 public:
  explicit ComplexTensor(Shape shape);
  ComplexTensor(Shape shape, std::vector<std::complex<double>> data);

  const Shape& shape() const { return shape_; }
  int order() const { return shape_.order(); }
  const std::vector<std::complex<double>>& data() const { return data_; }
  std::vector<std::complex<double>>& data() { return data_; }

  std::complex<double>& operator()(const Index& idx) { return data_[offset(idx)]; }
  const std::complex<double>& operator()(const Index& idx) const {
    return data_[offset(idx)];
  }

  double squared_norm() const;
  std::size_t offset(const Index& idx) const;
  Index unravel(std::size_t offset) const;

  static ComplexTensor from_sparse(const SparseTensor& v);

 private:
  Shape shape_;
  std::vector<std::complex<double>> data_;
};

// Positive per-mode weights alpha.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<Rational> alphas);

  static Weight ones(int order);
  // alpha_i = 1 / n_i.
  static Weight inverse_dims(const Shape& shape);

  int order() const { return static_cast<int>(alphas_.size()); }
  const Rational& operator[](int i) const { return alphas_.at(i); }
  const std::vector<Rational>& values() const { return alphas_; }
  Rational min() const;

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  std::vector<Rational> alphas_;
};

// Elementwise product, the weight of a vertical product.
Weight operator*(const Weight& a, const Weight& b);
// Concatenation, the weight of a horizontal product.
Weight concat(const Weight& a, const Weight& b);

// Exponents of a diagonal one-parameter subgroup: mode i scales basis vector j
// by t^{x[i][j]}.
struct OnePSGWeights {
  std::vector<std::vector<std::int64_t>> x;
};

Support support_of(const SparseTensor& v);

// Mode-i flattening: rows are mode-i coordinates, columns enumerate the
// remaining modes lexicographically (ascending mode order, last mode fastest).
// Returned row-major as rows * cols values.
struct FlatMatrix {
  int rows = 0;
  std::int64_t cols = 0;
  std::vector<std::complex<double>> data;
  const std::complex<double>& at(int r, std::int64_t c) const {
    return data[static_cast<std::size_t>(r * cols + c)];
  }
};
FlatMatrix flatten(const ComplexTensor& v, int mode);
ComplexTensor unflatten(const FlatMatrix& m, const Shape& shape, int mode);

// Vertical direct sum: v in the low block of every mode, w in the high block.
SparseTensor boxplus(const SparseTensor& v, const SparseTensor& w);
Support boxplus(const Support& s, const Support& t);

// Vertical (Kronecker) product; mode-i index pair (a, b) maps to a * n_i(w) + b.
SparseTensor boxtimes(const SparseTensor& v, const SparseTensor& w);
Support boxtimes(const Support& s, const Support& t);

// Horizontal product: modes of v followed by modes of w.
SparseTensor outer(const SparseTensor& v, const SparseTensor& w);
Support outer(const Support& s, const Support& t);

// Weighted determinant valuation over the valuation of lambda(t) v.
Rational psg_slope(const OnePSGWeights& x, const Support& support,
                   const Weight& alpha);

}  // namespace stablerank

#endif  // STABLERANK_TENSOR_H_
