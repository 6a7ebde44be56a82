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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stablerank/capset.h"
#include "stablerank/grank_complex.h"
#include "stablerank/io.h"
#include "stablerank/stable_rank.h"

namespace py = pybind11;

namespace stablerank {
namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(io::format_rational(q));
}

py::list fractions(const std::vector<Rational>& v) {
  py::list out;
  for (const auto& q : v) out.append(fraction(q));
  return out;
}

Rational rational(const py::handle& obj) {
  return io::parse_rational(py::str(obj).cast<std::string>());
}

Weight weight(const std::optional<std::vector<py::object>>& alpha, int order) {
  if (!alpha) return Weight::ones(order);
  std::vector<Rational> values;
  for (const auto& a : *alpha) values.push_back(rational(a));
  if (static_cast<int>(values.size()) != order) {
    throw io::ParseError("alpha has " + std::to_string(values.size()) +
                         " entries but the tensor has order " +
                         std::to_string(order));
  }
  return Weight(std::move(values));
}

Support make_support(const std::vector<int>& shape,
                     const std::vector<Index>& elements) {
  return Support(Shape(shape), elements);
}

SparseTensor make_tensor(const std::vector<int>& shape, const py::dict& entries,
                         const std::string& domain) {
  SparseTensor v(Shape(shape), ScalarDomain::parse(domain));
  for (const auto& [key, val] : entries) {
    const Index idx = key.cast<Index>();
    if (!v.shape().contains(idx)) throw io::ParseError("index out of range");
    v.add(idx, rational(val));
  }
  return v;
}

py::dict trank_dict(const TRankResult& r) {
  py::dict out;
  out["value"] = fraction(r.value);
  py::list primal;
  for (const auto& mode : r.primal) primal.append(fractions(mode));
  out["primal"] = primal;
  out["dual"] = fractions(r.dual);
  out["certificate_ok"] = r.certificate_ok;
  return out;
}

}  // namespace
}  // namespace stablerank

PYBIND11_MODULE(_stablerank, m) {
  using namespace stablerank;
  m.doc() = "Exact T-stable ranks, G-stable rank bounds and cap-set bounds";

  py::register_exception<ResourceLimitError>(m, "ResourceLimitError",
                                             PyExc_RuntimeError);

  m.def(
      "trank",
      [](const std::vector<int>& shape, const std::vector<Index>& elements,
         const std::optional<std::vector<py::object>>& alpha) {
        const Support s = make_support(shape, elements);
        return trank_dict(trank(s, weight(alpha, s.order())));
      },
      py::arg("shape"), py::arg("elements"), py::arg("alpha") = py::none(),
      "T-stable rank of a support by exact LP.");

  m.def(
      "dual_trank",
      [](const std::vector<int>& shape, const std::vector<Index>& elements,
         const std::optional<std::vector<py::object>>& alpha) {
        const Support s = make_support(shape, elements);
        return trank_dict(dual_trank(s, weight(alpha, s.order())));
      },
      py::arg("shape"), py::arg("elements"), py::arg("alpha") = py::none());

  m.def(
      "tslice",
      [](const std::vector<int>& shape, const std::vector<Index>& elements,
         int max_slices) {
        TSliceOptions opts;
        opts.max_slices = max_slices;
        return tslice(make_support(shape, elements), opts).value;
      },
      py::arg("shape"), py::arg("elements"), py::arg("max_slices") = 40,
      "T-slice rank by branch and bound.");

  m.def(
      "psg_slope",
      [](const std::vector<int>& shape, const std::vector<Index>& elements,
         const std::vector<std::vector<std::int64_t>>& x,
         const std::optional<std::vector<py::object>>& alpha) {
        const Support s = make_support(shape, elements);
        return fraction(psg_slope(OnePSGWeights{x}, s, weight(alpha, s.order())));
      },
      py::arg("shape"), py::arg("elements"), py::arg("x"),
      py::arg("alpha") = py::none());

  m.def(
      "grank",
      [](const std::vector<int>& shape, const py::dict& entries,
         const std::optional<std::vector<py::object>>& alpha, int budget,
         std::uint64_t seed, int max_iters) {
        const SparseTensor v = make_tensor(shape, entries, "rational");
        SandwichOptions opts;
        opts.search.budget = budget;
        opts.search.seed = seed;
        opts.ascend.max_iters = max_iters;
        const SandwichResult r = sandwich(v, weight(alpha, v.order()), opts);
        return py::make_tuple(r.lower, fraction(r.upper));
      },
      py::arg("shape"), py::arg("entries"), py::arg("alpha") = py::none(),
      py::arg("budget") = 200, py::arg("seed") = 0, py::arg("max_iters") = 500,
      "Interval (lower, upper) around the G-stable rank of a rational tensor.");

  m.def("spectral_norm",
        [](const Eigen::MatrixXcd& matrix) { return spectral_norm(matrix); },
        py::arg("matrix"));

  m.def(
      "ncrk",
      [](std::int64_t prime,
         const std::vector<std::vector<std::vector<std::int64_t>>>& matrices,
         const std::string& mode, int budget, std::uint64_t seed) {
        io::Json j = {{"prime", prime}, {"matrices", matrices}};
        const MatrixTuple a = io::matrix_tuple_from_json(j);
        if (mode == "brute") return ncrk_bruteforce(a);
        if (mode == "search") return ncrk_via_grank(a, budget, seed).value;
        throw io::ParseError("mode must be \"brute\" or \"search\"");
      },
      py::arg("prime"), py::arg("matrices"), py::arg("mode") = "brute",
      py::arg("budget") = 200, py::arg("seed") = 0,
      "Non-commutative rank of a matrix tuple over F_p.");

  m.def(
      "capset_bound",
      [](int n) { return py::int_(py::str(capset::capset_bound(n).get_str())); },
      py::arg("n"));
  m.def(
      "eg_bound",
      [](int n) { return py::int_(py::str(capset::eg_bound(n).get_str())); },
      py::arg("n"));
  m.def(
      "eg_prime_bound",
      [](int n) { return py::int_(py::str(capset::eg_prime_bound(n).get_str())); },
      py::arg("n"));
  m.def(
      "reduced_lp",
      [](int n) {
        const capset::CapsetLPResult r = capset::reduced_lp(n);
        return py::make_tuple(fraction(r.value), fractions(r.t));
      },
      py::arg("n"), "Value and optimal t of the symmetric cap-set LP.");
  m.def(
      "full_capset_lp", [](int n) { return fraction(capset::full_capset_lp(n)); },
      py::arg("n"));
  m.def("theta", &capset::theta);
}
