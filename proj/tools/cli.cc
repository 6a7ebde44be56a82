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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <sstream>

#include "CLI11.hpp"
#include "stablerank/capset.h"
#include "stablerank/grank_complex.h"
#include "stablerank/io.h"
#include "stablerank/stable_rank.h"

namespace stablerank::cli {

namespace {

using io::Json;

constexpr const char* kExitCodes =
    "Exit codes: 0 ok, 2 parse error, 3 solver anomaly, 4 resource limit.\n"
    "STABLERANK_MAX_LP_ROWS caps the number of LP constraints.";

// Raised for internal inconsistencies (failed certificates, disagreeing modes).
class Anomaly : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_lp_rows(std::size_t rows) {
  const char* env = std::getenv("STABLERANK_MAX_LP_ROWS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw io::ParseError("STABLERANK_MAX_LP_ROWS must be a nonnegative integer");
  }
  if (rows > cap) {
    throw ResourceLimitError("LP needs " + std::to_string(rows) +
                             " constraints; STABLERANK_MAX_LP_ROWS is " + env);
  }
}

std::size_t reduced_rows(int n) {
  std::size_t count = 0;
  for (int i = 0; i <= 2 * n; ++i) {
    for (int j = i; j <= 2 * n; ++j) {
      for (int k = j; i + j + k <= 2 * n; ++k) ++count;
    }
  }
  return count;
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  return csv_cell(Json(v.dump()));
}

// Writes one record or an array of records in the requested format.
// CSV columns follow `columns` when given, otherwise "n" first then sorted keys.
void emit(const Json& result, const std::string& format, std::ostream& out,
          const std::vector<std::string>& columns = {}) {
  if (format == "json") {
    out << result.dump(2) << "\n";
    return;
  }
  const Json rows = result.is_array() ? result : Json::array({result});
  if (format == "csv") {
    if (rows.empty()) return;
    std::vector<std::string> keys = columns;
    if (keys.empty()) {
      if (rows[0].contains("n")) keys.push_back("n");
      for (const auto& [k, v] : rows[0].items()) {
        if (k != "n") keys.push_back(k);
      }
    }
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < keys.size(); ++i) {
        out << (i ? "," : "") << (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : "");
      }
      out << "\n";
    }
    return;
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out << "\n";
    for (const auto& [k, v] : rows[r].items()) {
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

struct Common {
  std::string format = "json";
  bool one_based = false;
};

int cmd_trank(const Common& common, const std::string& path,
              const std::string& alpha_text, bool dual, std::ostream& out) {
  const Support s = io::support_from_any(io::read_json_file(path));
  const Weight alpha = io::parse_weight(alpha_text, s.order());
  check_lp_rows(dual ? static_cast<std::size_t>(s.shape().slice_count()) : s.size());
  const TRankResult r = dual ? dual_trank(s, alpha) : trank(s, alpha);
  Json j = io::to_json(r, s, common.one_based);
  if (common.format != "json") {
    j = {{"value", j["value"]}, {"certificate_ok", r.certificate_ok}};
  }
  emit(j, common.format, out);
  if (!r.certificate_ok) throw Anomaly("LP certificate failed verification");
  return kOk;
}

int cmd_tslice(const Common& common, const std::string& path, int max_slices,
               std::ostream& out) {
  const Support s = io::support_from_any(io::read_json_file(path));
  check_lp_rows(s.size());
  TSliceOptions options;
  options.max_slices = max_slices;
  const TSliceResult r = tslice(s, options);
  Json j = io::to_json(r);
  if (common.format != "json") j = {{"value", r.value}, {"nodes", r.nodes}};
  emit(j, common.format, out);
  return kOk;
}

int cmd_grank(const Common& common, const std::string& path,
              const std::string& alpha_text, int budget, std::uint64_t seed,
              double tol, int max_iters, std::ostream& out) {
  const Json input = io::read_json_file(path);
  if (io::is_complex_tensor(input)) {
    throw io::ParseError("grank needs a rational tensor for the upper bound");
  }
  const SparseTensor v = io::tensor_from_json(input);
  const Weight alpha = io::parse_weight(alpha_text, v.order());
  check_lp_rows(v.entries().size());
  SandwichOptions options;
  options.ascend.tol = tol;
  options.ascend.max_iters = max_iters;
  options.search.budget = budget;
  options.search.seed = seed;
  const SandwichResult r = sandwich(v, alpha, options);
  const bool consistent = r.lower <= r.upper.get_d() + 1e-9;
  Json j = {{"lower_bound", io::format_double(r.lower)},
            {"upper_bound", io::format_rational(r.upper)},
            {"consistent", consistent}};
  if (common.format == "json") {
    j["lower"] = io::to_json(r.lower_report);
    j["upper"] = {{"upper_bound", io::format_rational(r.upper)},
                  {"evaluated", r.upper_report.evaluated},
                  {"distinct_supports", r.upper_report.distinct},
                  {"support", io::support_to_json(r.upper_report.best_support,
                                                  common.one_based)}};
  }
  emit(j, common.format, out);
  if (!consistent) throw Anomaly("lower bound exceeds upper bound");
  return kOk;
}

const std::vector<std::string> kCapsetColumns = {
    "n", "value", "bound", "eg", "eg_prime", "conjecture_match"};

Json capset_row(int n) {
  const capset::CapsetLPResult lp = capset::reduced_lp(n);
  if (!lp.certificate_ok) throw Anomaly("reduced LP certificate failed");
  const std::vector<Rational> t = capset::conjectured_t(n);
  const bool match = capset::reduced_feasible(n, t) &&
                     capset::reduced_objective(n, t) == lp.value;
  return {{"n", n},
          {"value", io::format_rational(lp.value)},
          {"bound", lp.bound.get_str()},
          {"eg", capset::eg_bound(n).get_str()},
          {"eg_prime", capset::eg_prime_bound(n).get_str()},
          {"conjecture_match", match}};
}

int cmd_capset(const Common& common, int n, int table, int verify, bool full,
               int asymptotic, int jobs, std::ostream& out) {
  if (n == 0 && table == 0 && verify == 0 && asymptotic == 0) {
    throw io::ParseError("capset: pass one of --n, --table, --verify-conjecture, --asymptotic");
  }
  if (n < 0 || table < 0 || verify < 0 || asymptotic < 0) {
    throw io::ParseError("capset: n must be positive");
  }
  if (full && n == 0) throw io::ParseError("capset: --full requires --n");
  if (n > 0) {
    check_lp_rows(reduced_rows(n));
    Json row = capset_row(n);
    if (full) {
      if (n <= 3) check_lp_rows(n == 1 ? 7 : n == 2 ? 49 : 343);
      const Rational f = capset::full_capset_lp(n);
      const Rational reduced = capset::reduced_lp(n).value;
      row["full_value"] = io::format_rational(f);
      row["full_equals_reduced"] = f == reduced;
    }
    std::vector<std::string> columns = kCapsetColumns;
    if (full) {
      columns.push_back("full_value");
      columns.push_back("full_equals_reduced");
    }
    emit(row, common.format, out, columns);
  }
  if (table > 0) {
    check_lp_rows(reduced_rows(table));
    std::vector<Json> rows(table);
    const int workers = std::max(1, jobs);
    std::vector<std::future<void>> pending;
    for (int w = 0; w < workers; ++w) {
      pending.push_back(std::async(std::launch::async, [&, w] {
        for (int k = w; k < table; k += workers) rows[k] = capset_row(k + 1);
      }));
    }
    for (auto& p : pending) p.get();
    emit(Json(rows), common.format, out, kCapsetColumns);
  }
  if (verify > 0) {
    check_lp_rows(reduced_rows(verify));
    emit(io::to_json(capset::verify_conjecture(verify)), common.format, out);
  }
  if (asymptotic > 0) {
    check_lp_rows(reduced_rows(asymptotic));
    Json rows = Json::array();
    for (const auto& r : capset::asymptotic_report(asymptotic)) {
      rows.push_back({{"n", r.n},
                      {"bound", r.bound.get_str()},
                      {"ratio", io::format_double(r.ratio)}});
    }
    emit(rows, common.format, out);
  }
  return kOk;
}

int cmd_ncrk(const Common& common, const std::string& path,
             const std::string& mode, int budget, std::uint64_t seed,
             std::int64_t max_subspaces, std::ostream& out, std::ostream& err) {
  const MatrixTuple a = io::matrix_tuple_from_json(io::read_json_file(path));
  Json j = Json::object();
  int brute = -1;
  int search = -1;
  if (mode == "brute" || mode == "both") {
    NcrkOptions options;
    options.max_generators = max_subspaces;
    brute = ncrk_bruteforce(a, options);
    j["ncrk_brute"] = brute;
  }
  if (mode == "search" || mode == "both") {
    const NcrkSearchResult r = ncrk_via_grank(a, budget, seed);
    search = r.value;
    j["ncrk_search"] = r.value;
    j["upper_bound"] = io::format_rational(r.upper_bound);
    j["alpha"] = Json::array({"1", "1", std::to_string(std::min(a.rows, a.cols))});
    j["evaluated"] = r.evaluated;
  }
  if (mode == "both") j["agree"] = brute == search;
  j["ncrk"] = brute >= 0 ? brute : search;
  emit(j, common.format, out);
  if (mode == "both" && brute != search) {
    err << "ncrk modes disagree: brute force " << brute << ", search " << search
        << "\n";
    return kSolverAnomaly;
  }
  return kOk;
}

OnePSGWeights parse_exponents(const std::string& text, const Shape& shape) {
  OnePSGWeights x;
  std::stringstream modes(text);
  std::string mode;
  while (std::getline(modes, mode, ';')) {
    std::vector<std::int64_t> row;
    std::stringstream items(mode);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw io::ParseError("bad exponent \"" + item + "\"");
      }
    }
    x.x.push_back(std::move(row));
  }
  if (static_cast<int>(x.x.size()) != shape.order()) {
    throw io::ParseError("--x needs one ';'-separated row per mode");
  }
  return x;
}

int cmd_slope(const Common& common, const std::string& path,
              const std::string& exponents, const std::string& alpha_text,
              std::ostream& out) {
  const Support s = io::support_from_any(io::read_json_file(path));
  const Weight alpha = io::parse_weight(alpha_text, s.order());
  const OnePSGWeights x = parse_exponents(exponents, s.shape());
  const Rational slope = psg_slope(x, s, alpha);
  emit(Json{{"slope", io::format_rational(slope)}}, common.format, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact T-stable rank, slice rank and G-stable rank bounds for tensors",
               "stablerank"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--one-based", common.one_based,
               "Display tensor indices starting at 1 (files stay 0-based)");

  std::string path;
  std::string alpha;
  int budget = 200;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int max_iters = 500;

  auto* trank_cmd = app.add_subcommand("trank", "T-stable rank by exact LP");
  bool dual = false;
  trank_cmd->add_option("file", path, "Tensor or support JSON")->required();
  trank_cmd->add_option("--alpha", alpha, "Comma-separated weights, e.g. 1,1,1/2");
  trank_cmd->add_flag("--dual", dual, "Solve the packing (dual) LP directly");

  auto* tslice_cmd = app.add_subcommand("tslice", "T-slice rank by 0/1 branch and bound");
  int max_slices = 40;
  tslice_cmd->add_option("file", path, "Tensor or support JSON")->required();
  tslice_cmd->add_option("--max-slices", max_slices, "Exact-search slice limit");

  auto* grank_cmd = app.add_subcommand("grank", "G-stable rank sandwich [lower, upper_bound]");
  grank_cmd->add_option("file", path, "Rational tensor JSON")->required();
  grank_cmd->add_option("--alpha", alpha, "Comma-separated weights");
  grank_cmd->add_option("--budget", budget, "Basis changes sampled by the upper-bound search");
  grank_cmd->add_option("--seed", seed, "Search seed");
  grank_cmd->add_option("--tol", tol, "Relative stopping tolerance of the ascent");
  grank_cmd->add_option("--max-iters", max_iters, "Ascent iteration cap");

  auto* capset_cmd = app.add_subcommand("capset", "Cap-set upper bounds");
  int n = 0, table = 0, verify = 0, asymptotic = 0, jobs = 1;
  bool full = false;
  capset_cmd->add_option("--n", n, "Single dimension n");
  capset_cmd->add_option("--table", table, "Rows n = 1..N");
  capset_cmd->add_option("--verify-conjecture", verify, "Check the conjectured t for n");
  capset_cmd->add_flag("--full", full, "With --n (n <= 3): also solve the full support LP");
  capset_cmd->add_option("--asymptotic", asymptotic, "Ratios bound*sqrt(n)/theta^n for n = 1..N");
  capset_cmd->add_option("--jobs", jobs, "Worker threads for --table");

  auto* ncrk_cmd = app.add_subcommand("ncrk", "Non-commutative rank of a matrix tuple over F_p");
  std::string mode = "brute";
  std::int64_t max_subspaces = std::int64_t{1} << 20;
  ncrk_cmd->add_option("file", path, "Matrix tuple JSON")->required();
  ncrk_cmd->add_option("--mode", mode, "brute, search or both")
      ->check(CLI::IsMember({"brute", "search", "both"}));
  ncrk_cmd->add_option("--budget", budget, "Basis changes sampled in search mode");
  ncrk_cmd->add_option("--seed", seed, "Search seed");
  ncrk_cmd->add_option("--max-subspaces", max_subspaces, "Brute-force enumeration limit");

  auto* slope_cmd = app.add_subcommand("slope", "Slope of a diagonal one-parameter subgroup");
  std::string exponents;
  slope_cmd->add_option("file", path, "Tensor or support JSON")->required();
  slope_cmd->add_option("--x", exponents, "Exponents per mode, e.g. \"1,0;1,0;1,0\"")
      ->required();
  slope_cmd->add_option("--alpha", alpha, "Comma-separated weights");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*trank_cmd) return cmd_trank(common, path, alpha, dual, out);
    if (*tslice_cmd) return cmd_tslice(common, path, max_slices, out);
    if (*grank_cmd) {
      return cmd_grank(common, path, alpha, budget, seed, tol, max_iters, out);
    }
    if (*capset_cmd) {
      return cmd_capset(common, n, table, verify, full, asymptotic, jobs, out);
    }
    if (*ncrk_cmd) {
      return cmd_ncrk(common, path, mode, budget, seed, max_subspaces, out, err);
    }
    if (*slope_cmd) return cmd_slope(common, path, exponents, alpha, out);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const TensorError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const Anomaly& e) {
    err << "solver anomaly: " << e.what() << "\n";
    return kSolverAnomaly;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "solver anomaly: " << e.what() << "\n";
    return kSolverAnomaly;
  }
  return kParseError;
}

}  // namespace stablerank::cli
