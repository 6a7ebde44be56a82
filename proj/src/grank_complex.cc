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

#include "stablerank/grank_complex.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace stablerank {

GroupElement GroupElement::identity(const Shape& shape) {
  GroupElement g;
  for (int n : shape.dims()) g.factors.push_back(ComplexMatrix::Identity(n, n));
  return g;
}

ComplexMatrix to_matrix(const FlatMatrix& m) {
  ComplexMatrix out(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r) {
    for (std::int64_t c = 0; c < m.cols; ++c) out(r, c) = m.at(r, c);
  }
  return out;
}

ComplexMatrix flatten_matrix(const ComplexTensor& v, int mode) {
  return to_matrix(flatten(v, mode));
}

namespace {

constexpr int kMaxPowerIterations = 200000;

// Dominant eigenvalue of a Hermitian positive semidefinite matrix.
double dominant_eigenvalue(const ComplexMatrix& gram) {
  const Eigen::Index n = gram.rows();
  if (n == 1) return std::abs(gram(0, 0));
  // Fixed pseudo-random start.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = {unit(rng), unit(rng)};
  x.normalize();

  // Repeated squaring of the normalized Gram matrix, then Rayleigh quotients
  // against the original.
  const double scale = gram.norm();
  if (scale == 0) return 0;
  ComplexMatrix power = gram / scale;
  for (int s = 0; s < 6; ++s) {
    power = (power * power).eval();
    const double f = power.norm();
    if (f == 0 || !std::isfinite(f)) break;
    power /= f;
  }
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXcd y = power * x;
    const double ny = y.norm();
    if (ny == 0 || !std::isfinite(ny)) break;
    x = y / ny;
  }

  double theta = 0;
  double previous = -1;
  int stable = 0;
  for (int it = 0; it < kMaxPowerIterations; ++it) {
    Eigen::VectorXcd y = gram * x;
    theta = x.dot(y).real();
    const double ny = y.norm();
    if (ny == 0) return 0;
    const double residual = (y - theta * x).norm();
    x = y / ny;
    if (residual <= 1e-14 * theta) break;
    if (previous >= 0 && std::abs(theta - previous) <= 1e-16 * theta) {
      if (++stable >= 8) break;
    } else {
      stable = 0;
    }
    previous = theta;
  }
  return theta;
}

}  // namespace

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) throw TensorError("spectral_norm of an empty matrix");
  const ComplexMatrix gram =
      m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint())
                           : ComplexMatrix(m.adjoint() * m);
  return std::sqrt(std::max(0.0, dominant_eigenvalue(gram)));
}

ComplexTensor mode_product(const ComplexTensor& v, const ComplexMatrix& g,
                           int mode) {
  FlatMatrix flat = flatten(v, mode);
  if (g.rows() != flat.rows || g.cols() != flat.rows) {
    throw TensorError("mode_product: matrix size does not match mode");
  }
  const ComplexMatrix product = g * to_matrix(flat);
  for (int r = 0; r < flat.rows; ++r) {
    for (std::int64_t c = 0; c < flat.cols; ++c) {
      flat.data[static_cast<std::size_t>(r * flat.cols + c)] = product(r, c);
    }
  }
  return unflatten(flat, v.shape(), mode);
}

ComplexTensor apply(const GroupElement& g, const ComplexTensor& v) {
  if (g.order() != v.order()) {
    throw TensorError("group element order does not match tensor");
  }
  ComplexTensor out = v;
  for (int i = 0; i < v.order(); ++i) out = mode_product(out, g.factors[i], i);
  return out;
}

std::vector<double> mode_ratios(const ComplexTensor& v, const Weight& alpha) {
  if (alpha.order() != v.order()) {
    throw TensorError("weight length does not match tensor order");
  }
  const double norm2 = v.squared_norm();
  if (norm2 == 0) throw TensorError("objective is undefined for the zero tensor");
  std::vector<double> ratios;
  for (int i = 0; i < v.order(); ++i) {
    const double sigma = spectral_norm(flatten_matrix(v, i));
    ratios.push_back(alpha[i].get_d() * norm2 / (sigma * sigma));
  }
  return ratios;
}

double objective(const ComplexTensor& v, const GroupElement& g,
                 const Weight& alpha) {
  const std::vector<double> r = mode_ratios(apply(g, v), alpha);
  return *std::min_element(r.begin(), r.end());
}

double stationarity_residual(const ComplexTensor& v, const Weight& alpha,
                             double r) {
  if (alpha.order() != v.order()) {
    throw TensorError("weight length does not match tensor order");
  }
  const double norm2 = v.squared_norm();
  if (norm2 == 0) throw TensorError("stationarity of the zero tensor");
  double worst = 0;
  for (int i = 0; i < v.order(); ++i) {
    // lambda_min(a I - r P) = a - r lambda_max(P) for P = Phi Phi^H.
    const double sigma = spectral_norm(flatten_matrix(v, i));
    const double a = alpha[i].get_d() * norm2;
    const double lambda_min = a - r * sigma * sigma;
    worst = std::max(worst, -lambda_min / a);
  }
  return worst;
}

namespace {

// (eps I + P)^{-1/2} for Hermitian positive semidefinite P.
ComplexMatrix inverse_sqrt(const ComplexMatrix& p, double eps) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(p);
  Eigen::VectorXd d = eig.eigenvalues().array().max(0.0) + eps;
  return eig.eigenvectors() * d.cwiseInverse().cwiseSqrt().asDiagonal() *
         eig.eigenvectors().adjoint();
}

}  // namespace

LowerBoundReport ascend(const ComplexTensor& v, const Weight& alpha,
                        const AscendOptions& options) {
  if (v.squared_norm() == 0) throw TensorError("ascend: zero tensor");
  GroupElement g = GroupElement::identity(v.shape());
  ComplexTensor current = v;
  {
    const double n = std::sqrt(current.squared_norm());
    for (auto& z : current.data()) z /= n;
  }

  LowerBoundReport report;
  report.g = g;
  report.ratios = mode_ratios(current, alpha);
  report.bound = *std::min_element(report.ratios.begin(), report.ratios.end());
  double last = report.bound;
  // Normalized state; g.v is not stored.
  ComplexTensor best = current;

  for (int it = 1; it <= options.max_iters; ++it) {
    const std::vector<double> ratios = mode_ratios(current, alpha);
    const int mode = static_cast<int>(
        std::min_element(ratios.begin(), ratios.end()) - ratios.begin());
    const ComplexMatrix phi = flatten_matrix(current, mode);
    const int n = static_cast<int>(phi.rows());
    // Gram matrix rescaled to trace n.
    const ComplexMatrix gram = (phi * phi.adjoint()) * static_cast<double>(n);
    const ComplexMatrix whitening = inverse_sqrt(gram, options.epsilon * n);
    const ComplexMatrix h =
        (1.0 - options.step) * ComplexMatrix::Identity(n, n) +
        options.step * whitening;

    current = mode_product(current, h, mode);
    g.factors[mode] = (h * g.factors[mode]).eval();
    const double norm = std::sqrt(current.squared_norm());
    if (norm == 0 || !std::isfinite(norm)) break;
    for (auto& z : current.data()) z /= norm;
    // Renormalize the accumulated factors.
    const double gscale = g.factors[mode].norm();
    if (gscale > 0) g.factors[mode] /= gscale;

    const std::vector<double> now = mode_ratios(current, alpha);
    const double value = *std::min_element(now.begin(), now.end());
    report.iterations = it;
    if (value > report.bound) {
      report.bound = value;
      report.ratios = now;
      report.g = g;
      best = current;
    }
    if (std::abs(value - last) <= options.tol * std::max(1.0, std::abs(last))) {
      break;
    }
    last = value;
  }
  report.stationarity_residual =
      stationarity_residual(best, alpha, report.bound);
  return report;
}

SandwichResult sandwich(const SparseTensor& v, const Weight& alpha,
                        const SandwichOptions& options) {
  if (!v.domain().is_rational()) {
    throw TensorError("sandwich needs a rational tensor that embeds in C");
  }
  SandwichResult result;
  if (v.entries().empty()) {
    result.lower = 0;
    result.upper = 0;
    return result;
  }
  result.lower_report =
      ascend(ComplexTensor::from_sparse(v), alpha, options.ascend);
  result.lower = result.lower_report.bound;
  result.upper_report = grank_upper_search(v, alpha, options.search);
  result.upper = result.upper_report.value;
  return result;
}

}  // namespace stablerank
