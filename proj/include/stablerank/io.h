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

#ifndef STABLERANK_IO_H_
#define STABLERANK_IO_H_

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "stablerank/capset.h"
#include "stablerank/grank_complex.h"
#include "stablerank/lp.h"
#include "stablerank/stable_rank.h"
#include "stablerank/tensor.h"

namespace stablerank::io {

using Json = nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "p/q" or "n"; JSON integers are accepted on input.
Rational parse_rational(const std::string& text);
Rational rational_from_json(const Json& j);
std::string format_rational(const Rational& q);
// 12 significant digits.
std::string format_double(double x);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

// {"shape":[..],"domain":"rational"|"mod:<p>","entries":[{"idx":[..],"val":"p/q"}]}
SparseTensor tensor_from_json(const Json& j);
Json tensor_to_json(const SparseTensor& v);

// Either an exact tensor (converted to doubles) or "domain":"complex" with
// dense row-major [re,im] pairs or sparse {"idx":..,"val":[re,im]} entries.
ComplexTensor complex_tensor_from_json(const Json& j);
bool is_complex_tensor(const Json& j);

// {"shape":[..],"elements":[[..],..]}
Support support_from_json(const Json& j);
Json support_to_json(const Support& s, bool one_based = false);
bool is_support(const Json& j);
// Support file, or the support of a tensor file.
Support support_from_any(const Json& j);

// {"prime":p,"matrices":[[[..],..],..]}
MatrixTuple matrix_tuple_from_json(const Json& j);
Json matrix_tuple_to_json(const MatrixTuple& a);

Weight parse_weight(const std::string& text, int order);

Json to_json(const LPSolution& sol);
Json to_json(const TRankResult& r, const Support& s, bool one_based = false);
Json to_json(const TSliceResult& r);
Json to_json(const LowerBoundReport& r);
Json to_json(const capset::CapsetLPResult& r);
Json to_json(const capset::ConjectureReport& r);

}  // namespace stablerank::io

#endif  // STABLERANK_IO_H_
