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

#include "stablerank/tensor.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stablerank {

Shape::Shape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw TensorError("shape must have at least one mode");
  for (int n : dims_) {
    if (n < 1) throw TensorError("shape dims must be positive");
  }
}

std::int64_t Shape::size() const {
  std::int64_t total = 1;
  for (int n : dims_) total *= n;
  return total;
}

int Shape::slice_count() const {
  return std::accumulate(dims_.begin(), dims_.end(), 0);
}

bool Shape::contains(const Index& idx) const {
  if (idx.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= dims_[i]) return false;
  }
  return true;
}

std::string to_string(const Shape& shape) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < shape.order(); ++i) {
    if (i) out << ",";
    out << shape.dim(i);
  }
  out << ")";
  return out.str();
}

Support::Support(Shape shape, const std::vector<Index>& elements)
    : shape_(std::move(shape)) {
  for (const auto& e : elements) insert(e);
}

void Support::insert(const Index& idx) {
  if (!shape_.contains(idx)) {
    throw TensorError("support element out of range for shape " +
                      to_string(shape_));
  }
  elements_.insert(idx);
}

ScalarDomain ScalarDomain::modular(std::int64_t prime) {
  if (prime < 2) throw TensorError("modulus must be a prime >= 2");
  for (std::int64_t k = 2; k * k <= prime; ++k) {
    if (prime % k == 0) throw TensorError("modulus must be prime");
  }
  return ScalarDomain(prime);
}

Rational ScalarDomain::normalize(const Rational& x) const {
  if (is_rational()) return x;
  mpz_class p(static_cast<long>(prime_));
  mpz_class num = x.get_num() % p;
  mpz_class den = x.get_den() % p;
  if (den == 0) throw TensorError("denominator vanishes modulo p");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * inv) % p;
  if (r < 0) r += p;
  return Rational(r);
}

Rational ScalarDomain::add(const Rational& a, const Rational& b) const {
  return normalize(a + b);
}

Rational ScalarDomain::mul(const Rational& a, const Rational& b) const {
  return normalize(a * b);
}

Rational ScalarDomain::inverse(const Rational& a) const {
  if (a == 0) throw TensorError("inverse of zero");
  if (is_rational()) return 1 / a;
  return normalize(Rational(1) / a);
}

std::string ScalarDomain::name() const {
  return is_rational() ? "rational" : "mod:" + std::to_string(prime_);
}

ScalarDomain ScalarDomain::parse(const std::string& text) {
  if (text == "rational") return rational();
  if (text.rfind("mod:", 0) == 0) {
    std::size_t used = 0;
    std::int64_t p = 0;
    try {
      p = std::stoll(text.substr(4), &used);
    } catch (const std::exception&) {
      throw TensorError("bad domain: " + text);
    }
    if (used != text.size() - 4) throw TensorError("bad domain: " + text);
    return modular(p);
  }
  throw TensorError("unknown scalar domain: " + text);
}

SparseTensor::SparseTensor(Shape shape, ScalarDomain domain)
    : shape_(std::move(shape)), domain_(domain) {}

void SparseTensor::add(const Index& idx, const Rational& value) {
  if (!shape_.contains(idx)) throw TensorError("tensor index out of range");
  Rational v = domain_.normalize(value);
  if (v == 0) return;
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    entries_.emplace(idx, v);
    return;
  }
  it->second = domain_.add(it->second, v);
  if (it->second == 0) entries_.erase(it);
}

void SparseTensor::set(const Index& idx, const Rational& value) {
  if (!shape_.contains(idx)) throw TensorError("tensor index out of range");
  Rational v = domain_.normalize(value);
  if (v == 0) {
    entries_.erase(idx);
  } else {
    entries_[idx] = v;
  }
}

Rational SparseTensor::at(const Index& idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? Rational(0) : it->second;
}

ComplexTensor::ComplexTensor(Shape shape)
    : shape_(std::move(shape)),
      data_(static_cast<std::size_t>(shape_.size())) {}

ComplexTensor::ComplexTensor(Shape shape,
                             std::vector<std::complex<double>> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != shape_.size()) {
    throw TensorError("dense data size does not match shape");
  }
}

double ComplexTensor::squared_norm() const {
  double s = 0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

std::size_t ComplexTensor::offset(const Index& idx) const {
  std::size_t off = 0;
  for (int i = 0; i < shape_.order(); ++i) {
    off = off * shape_.dim(i) + idx[i];
  }
  return off;
}

Index ComplexTensor::unravel(std::size_t off) const {
  Index idx(shape_.order());
  for (int i = shape_.order() - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(off % shape_.dim(i));
    off /= shape_.dim(i);
  }
  return idx;
}

ComplexTensor ComplexTensor::from_sparse(const SparseTensor& v) {
  ComplexTensor out(v.shape());
  for (const auto& [idx, val] : v.entries()) out(idx) = val.get_d();
  return out;
}

Weight::Weight(std::vector<Rational> alphas) : alphas_(std::move(alphas)) {
  for (const auto& a : alphas_) {
    if (a <= 0) throw TensorError("weights must be positive");
  }
}

Weight Weight::ones(int order) {
  return Weight(std::vector<Rational>(order, Rational(1)));
}

Weight Weight::inverse_dims(const Shape& shape) {
  std::vector<Rational> a;
  for (int n : shape.dims()) a.push_back(Rational(1) / Rational(n));
  return Weight(std::move(a));
}

Rational Weight::min() const {
  if (alphas_.empty()) throw TensorError("empty weight");
  return *std::min_element(alphas_.begin(), alphas_.end());
}

Weight operator*(const Weight& a, const Weight& b) {
  if (a.order() != b.order()) throw TensorError("weight order mismatch");
  std::vector<Rational> out;
  for (int i = 0; i < a.order(); ++i) out.push_back(a[i] * b[i]);
  return Weight(std::move(out));
}

Weight concat(const Weight& a, const Weight& b) {
  std::vector<Rational> out = a.values();
  out.insert(out.end(), b.values().begin(), b.values().end());
  return Weight(std::move(out));
}

Support support_of(const SparseTensor& v) {
  Support s(v.shape());
  for (const auto& [idx, val] : v.entries()) s.insert(idx);
  return s;
}

FlatMatrix flatten(const ComplexTensor& v, int mode) {
  const Shape& shape = v.shape();
  if (mode < 0 || mode >= shape.order()) {
    throw TensorError("flatten: mode out of range");
  }
  FlatMatrix m;
  m.rows = shape.dim(mode);
  m.cols = shape.size() / m.rows;
  m.data.resize(v.data().size());
  // The column index is the offset with the mode-i coordinate removed.
  std::int64_t inner = 1;
  for (int i = mode + 1; i < shape.order(); ++i) inner *= shape.dim(i);
  const std::int64_t outer_stride = inner * m.rows;
  for (std::size_t off = 0; off < v.data().size(); ++off) {
    const std::int64_t o = static_cast<std::int64_t>(off);
    const int row = static_cast<int>((o / inner) % m.rows);
    const std::int64_t col = (o / outer_stride) * inner + o % inner;
    m.data[static_cast<std::size_t>(row * m.cols + col)] = v.data()[off];
  }
  return m;
}

ComplexTensor unflatten(const FlatMatrix& m, const Shape& shape, int mode) {
  if (mode < 0 || mode >= shape.order()) {
    throw TensorError("unflatten: mode out of range");
  }
  if (m.rows != shape.dim(mode) || m.rows * m.cols != shape.size()) {
    throw TensorError("unflatten: matrix does not match shape");
  }
  ComplexTensor v(shape);
  std::int64_t inner = 1;
  for (int i = mode + 1; i < shape.order(); ++i) inner *= shape.dim(i);
  const std::int64_t outer_stride = inner * m.rows;
  for (std::size_t off = 0; off < v.data().size(); ++off) {
    const std::int64_t o = static_cast<std::int64_t>(off);
    const int row = static_cast<int>((o / inner) % m.rows);
    const std::int64_t col = (o / outer_stride) * inner + o % inner;
    v.data()[off] = m.data[static_cast<std::size_t>(row * m.cols + col)];
  }
  return v;
}

namespace {

void require_same_order(int a, int b, const char* op) {
  if (a != b) {
    throw TensorError(std::string(op) + ": tensors must have the same order");
  }
}

void require_same_domain(const SparseTensor& v, const SparseTensor& w,
                         const char* op) {
  if (!(v.domain() == w.domain())) {
    throw TensorError(std::string(op) + ": scalar domains differ (" +
                      v.domain().name() + " vs " + w.domain().name() + ")");
  }
}

Shape summed_shape(const Shape& a, const Shape& b) {
  std::vector<int> dims;
  for (int i = 0; i < a.order(); ++i) dims.push_back(a.dim(i) + b.dim(i));
  return Shape(std::move(dims));
}

Shape product_shape(const Shape& a, const Shape& b) {
  std::vector<int> dims;
  for (int i = 0; i < a.order(); ++i) dims.push_back(a.dim(i) * b.dim(i));
  return Shape(std::move(dims));
}

Shape concat_shape(const Shape& a, const Shape& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Shape(std::move(dims));
}

Index shifted(const Index& idx, const Shape& offset) {
  Index out(idx);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += offset.dim(i);
  return out;
}

Index paired(const Index& a, const Index& b, const Shape& inner) {
  Index out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] * inner.dim(i) + b[i];
  }
  return out;
}

Index joined(const Index& a, const Index& b) {
  Index out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

SparseTensor boxplus(const SparseTensor& v, const SparseTensor& w) {
  require_same_order(v.order(), w.order(), "boxplus");
  require_same_domain(v, w, "boxplus");
  SparseTensor out(summed_shape(v.shape(), w.shape()), v.domain());
  for (const auto& [idx, val] : v.entries()) out.set(idx, val);
  for (const auto& [idx, val] : w.entries()) {
    out.set(shifted(idx, v.shape()), val);
  }
  return out;
}

Support boxplus(const Support& s, const Support& t) {
  require_same_order(s.order(), t.order(), "boxplus");
  Support out(summed_shape(s.shape(), t.shape()));
  for (const auto& e : s.elements()) out.insert(e);
  for (const auto& e : t.elements()) out.insert(shifted(e, s.shape()));
  return out;
}

SparseTensor boxtimes(const SparseTensor& v, const SparseTensor& w) {
  require_same_order(v.order(), w.order(), "boxtimes");
  require_same_domain(v, w, "boxtimes");
  SparseTensor out(product_shape(v.shape(), w.shape()), v.domain());
  for (const auto& [a, x] : v.entries()) {
    for (const auto& [b, y] : w.entries()) {
      out.set(paired(a, b, w.shape()), v.domain().mul(x, y));
    }
  }
  return out;
}

Support boxtimes(const Support& s, const Support& t) {
  require_same_order(s.order(), t.order(), "boxtimes");
  Support out(product_shape(s.shape(), t.shape()));
  for (const auto& a : s.elements()) {
    for (const auto& b : t.elements()) out.insert(paired(a, b, t.shape()));
  }
  return out;
}

SparseTensor outer(const SparseTensor& v, const SparseTensor& w) {
  require_same_domain(v, w, "outer");
  SparseTensor out(concat_shape(v.shape(), w.shape()), v.domain());
  for (const auto& [a, x] : v.entries()) {
    for (const auto& [b, y] : w.entries()) {
      out.set(joined(a, b), v.domain().mul(x, y));
    }
  }
  return out;
}

Support outer(const Support& s, const Support& t) {
  Support out(concat_shape(s.shape(), t.shape()));
  for (const auto& a : s.elements()) {
    for (const auto& b : t.elements()) out.insert(joined(a, b));
  }
  return out;
}

Rational psg_slope(const OnePSGWeights& x, const Support& support,
                   const Weight& alpha) {
  const Shape& shape = support.shape();
  if (alpha.order() != shape.order() ||
      static_cast<int>(x.x.size()) != shape.order()) {
    throw TensorError("psg_slope: order mismatch");
  }
  Rational numerator = 0;
  for (int i = 0; i < shape.order(); ++i) {
    if (static_cast<int>(x.x[i].size()) != shape.dim(i)) {
      throw TensorError("psg_slope: exponent row length mismatch");
    }
    std::int64_t det_valuation = 0;
    for (std::int64_t e : x.x[i]) {
      if (e < 0) throw TensorError("psg_slope: exponents must be nonnegative");
      det_valuation += e;
    }
    numerator += alpha[i] * Rational(static_cast<long>(det_valuation));
  }
  if (support.empty()) throw TensorError("zero tensor has no slope");
  std::int64_t valuation = -1;
  for (const auto& s : support.elements()) {
    std::int64_t sum = 0;
    for (int i = 0; i < shape.order(); ++i) sum += x.x[i][s[i]];
    if (valuation < 0 || sum < valuation) valuation = sum;
  }
  if (valuation == 0) {
    throw TensorError("lambda(t)*v does not vanish at t->0");
  }
  Rational slope = numerator / Rational(static_cast<long>(valuation));
  slope.canonicalize();
  return slope;
}

}  // namespace stablerank
