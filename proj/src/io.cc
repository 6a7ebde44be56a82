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

#include "stablerank/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stablerank::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

Shape shape_from_json(const Json& j) {
  const Json& dims = field(j, "shape");
  if (!dims.is_array()) throw ParseError("\"shape\" must be an array");
  std::vector<int> out;
  for (const auto& d : dims) {
    if (!d.is_number_integer()) throw ParseError("shape entries must be integers");
    out.push_back(d.get<int>());
  }
  try {
    return Shape(std::move(out));
  } catch (const TensorError& e) {
    throw ParseError(e.what());
  }
}

Index index_from_json(const Json& j, const Shape& shape) {
  if (!j.is_array()) throw ParseError("index must be an array");
  Index idx;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw ParseError("index entries must be integers");
    idx.push_back(c.get<int>());
  }
  if (!shape.contains(idx)) {
    throw ParseError("index out of range for shape " + to_string(shape));
  }
  return idx;
}

Json index_to_json(const Index& idx, bool one_based) {
  Json out = Json::array();
  for (int c : idx) out.push_back(one_based ? c + 1 : c);
  return out;
}

std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("complex values must be [re, im]");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  const std::size_t slash = text.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
      if (text[i] < '0' || text[i] > '9') return false;
    }
    return true;
  };
  const std::size_t num_end = slash == std::string::npos ? text.size() : slash;
  if (!digits(start, num_end) ||
      (slash != std::string::npos && !digits(slash + 1, text.size()))) {
    throw ParseError("malformed rational \"" + text + "\"");
  }
  Rational q;
  std::string body = text[0] == '+' ? text.substr(1) : text;
  if (q.set_str(body, 10) != 0) throw ParseError("malformed rational \"" + text + "\"");
  if (q.get_den() == 0) throw ParseError("zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rationals must be strings \"p/q\" or integers");
}

std::string format_rational(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

SparseTensor tensor_from_json(const Json& j) {
  const Shape shape = shape_from_json(j);
  const Json& domain_field = field(j, "domain");
  if (!domain_field.is_string()) throw ParseError("\"domain\" must be a string");
  ScalarDomain domain = ScalarDomain::rational();
  try {
    domain = ScalarDomain::parse(domain_field.get<std::string>());
  } catch (const TensorError& e) {
    throw ParseError(e.what());
  }
  SparseTensor v(shape, domain);
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
  for (const auto& e : entries) {
    const Index idx = index_from_json(field(e, "idx"), shape);
    try {
      v.add(idx, rational_from_json(field(e, "val")));
    } catch (const TensorError& err) {
      throw ParseError(err.what());
    }
  }
  return v;
}

Json tensor_to_json(const SparseTensor& v) {
  Json entries = Json::array();
  for (const auto& [idx, val] : v.entries()) {
    entries.push_back({{"idx", index_to_json(idx, false)},
                       {"val", format_rational(val)}});
  }
  return {{"shape", v.shape().dims()},
          {"domain", v.domain().name()},
          {"entries", entries}};
}

bool is_complex_tensor(const Json& j) {
  return j.is_object() && j.contains("domain") && j["domain"] == "complex";
}

ComplexTensor complex_tensor_from_json(const Json& j) {
  if (!is_complex_tensor(j)) {
    SparseTensor v = tensor_from_json(j);
    if (!v.domain().is_rational()) {
      throw ParseError("only rational tensors embed into the complex numbers");
    }
    return ComplexTensor::from_sparse(v);
  }
  const Shape shape = shape_from_json(j);
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
  ComplexTensor v(shape);
  const bool sparse = !entries.empty() && entries[0].is_object();
  if (sparse) {
    for (const auto& e : entries) {
      v(index_from_json(field(e, "idx"), shape)) = complex_from_json(field(e, "val"));
    }
  } else {
    if (static_cast<std::int64_t>(entries.size()) != shape.size()) {
      throw ParseError("dense complex entries must list every coordinate");
    }
    for (std::size_t k = 0; k < entries.size(); ++k) {
      v.data()[k] = complex_from_json(entries[k]);
    }
  }
  return v;
}

bool is_support(const Json& j) {
  return j.is_object() && j.contains("elements") && !j.contains("entries");
}

Support support_from_json(const Json& j) {
  const Shape shape = shape_from_json(j);
  const Json& elements = field(j, "elements");
  if (!elements.is_array()) throw ParseError("\"elements\" must be an array");
  Support s(shape);
  for (const auto& e : elements) s.insert(index_from_json(e, shape));
  return s;
}

Json support_to_json(const Support& s, bool one_based) {
  Json elements = Json::array();
  for (const auto& e : s.elements()) elements.push_back(index_to_json(e, one_based));
  return {{"shape", s.shape().dims()}, {"elements", elements}};
}

Support support_from_any(const Json& j) {
  if (is_support(j)) return support_from_json(j);
  if (is_complex_tensor(j)) {
    throw ParseError("exact ranks need a rational or mod-p tensor");
  }
  return support_of(tensor_from_json(j));
}

MatrixTuple matrix_tuple_from_json(const Json& j) {
  MatrixTuple a;
  const Json& prime = field(j, "prime");
  if (!prime.is_number_integer()) throw ParseError("\"prime\" must be an integer");
  a.prime = prime.get<std::int64_t>();
  const Json& mats = field(j, "matrices");
  if (!mats.is_array() || mats.empty()) {
    throw ParseError("\"matrices\" must be a nonempty array");
  }
  for (const auto& m : mats) {
    if (!m.is_array()) throw ParseError("each matrix must be an array of rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : m) {
      if (!row.is_array()) throw ParseError("matrix rows must be arrays");
      std::vector<std::int64_t> r;
      for (const auto& x : row) {
        if (!x.is_number_integer()) throw ParseError("matrix entries must be integers");
        const std::int64_t v = x.get<std::int64_t>() % a.prime;
        r.push_back(v < 0 ? v + a.prime : v);
      }
      rows.push_back(std::move(r));
    }
    a.matrices.push_back(std::move(rows));
  }
  a.rows = static_cast<int>(a.matrices[0].size());
  a.cols = a.rows ? static_cast<int>(a.matrices[0][0].size()) : 0;
  try {
    a.validate();
  } catch (const TensorError& e) {
    throw ParseError(e.what());
  }
  return a;
}

Json matrix_tuple_to_json(const MatrixTuple& a) {
  return {{"prime", a.prime}, {"matrices", a.matrices}};
}

Weight parse_weight(const std::string& text, int order) {
  if (text.empty()) return Weight::ones(order);
  std::vector<Rational> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(parse_rational(item));
  if (static_cast<int>(values.size()) != order) {
    throw ParseError("--alpha has " + std::to_string(values.size()) +
                     " entries but the tensor has order " + std::to_string(order));
  }
  try {
    return Weight(std::move(values));
  } catch (const TensorError& e) {
    throw ParseError(e.what());
  }
}

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(format_rational(q));
  return out;
}

Json doubles(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(format_double(x));
  return out;
}

}  // namespace

Json to_json(const LPSolution& sol) {
  Json out = {{"status", to_string(sol.status)}};
  if (sol.status == LPStatus::kOptimal) {
    out["value"] = format_rational(sol.value);
    out["primal"] = rationals(sol.x);
    out["dual"] = rationals(sol.y);
  }
  return out;
}

Json to_json(const TRankResult& r, const Support& s, bool one_based) {
  Json primal = Json::array();
  for (const auto& mode : r.primal) primal.push_back(rationals(mode));
  Json dual = Json::array();
  std::size_t k = 0;
  for (const auto& e : s.elements()) {
    if (k >= r.dual.size()) break;
    dual.push_back({{"idx", index_to_json(e, one_based)},
                    {"val", format_rational(r.dual[k++])}});
  }
  return {{"value", format_rational(r.value)},
          {"primal", primal},
          {"dual", dual},
          {"certificate_ok", r.certificate_ok}};
}

Json to_json(const TSliceResult& r) {
  return {{"value", r.value}, {"chosen", r.chosen}, {"nodes", r.nodes}};
}

Json to_json(const LowerBoundReport& r) {
  return {{"lower_bound", format_double(r.bound)},
          {"ratios", doubles(r.ratios)},
          {"stationarity_residual", format_double(r.stationarity_residual)},
          {"iterations", r.iterations}};
}

Json to_json(const capset::CapsetLPResult& r) {
  return {{"n", r.n},
          {"value", format_rational(r.value)},
          {"bound", r.bound.get_str()},
          {"t", rationals(r.t)},
          {"certificate_ok", r.certificate_ok}};
}

Json to_json(const capset::ConjectureReport& r) {
  return {{"n", r.n},
          {"feasible", r.feasible},
          {"conjecture_value", format_rational(r.conjecture_value)},
          {"lp_value", format_rational(r.lp_value)},
          {"matches", r.matches}};
}

}  // namespace stablerank::io
