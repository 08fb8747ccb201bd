// Copyright 2026 The wpmfre Authors
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

// JSON problem files and reports.
//
// Problem file:
//
//   {"w": 0.75, "p": 3, "A": [[...], ...], "b": [...], "c": [...]}
//
// Doubles are written in shortest round-trip form, so parse(serialize(p))
// reproduces every value bit for bit. Row/column indices that appear in
// files and diagnostics are 1-based.

#ifndef WPMFRE_IO_HPP_
#define WPMFRE_IO_HPP_

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/optimizer.hpp"
#include "wpmfre/simplification.hpp"
#include "wpmfre/solution_lattice.hpp"
#include "wpmfre/wpm_operator.hpp"

namespace wpmfre {

// Malformed input; `field` names the offending key such as "A[2][3]".
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

namespace internal {

using Json = nlohmann::ordered_json;

inline double ReadNumber(const Json& value, const std::string& field) {
  if (!value.is_number()) throw ParseError(field, "expected a number");
  return value.get<double>();
}

inline std::vector<double> ReadVector(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError(key, "missing field");
  const Json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(key, "expected an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(ReadNumber(arr[k], key + "[" + std::to_string(k + 1) + "]"));
  }
  return out;
}

inline void RequireUnit(double v, const std::string& field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "value " << v << " outside [0,1]";
    throw ParseError(field, os.str());
  }
}

inline Json ToJson(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

inline Json ToJson(const ChoiceVector& e) {
  Json out = Json::array();
  for (std::size_t j : e.columns) out.push_back(j + 1);
  return out;
}

inline Json ToJson(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (std::size_t j : idx) out.push_back(j + 1);
  return out;
}

inline Json ReadDocument(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("", err.what());
  }
}

}  // namespace internal

inline Problem ParseProblem(std::string_view text) {
  using internal::Json;
  const Json doc = internal::ReadDocument(text);
  if (!doc.is_object()) throw ParseError("", "expected a JSON object");
  for (const char* key : {"w", "p"}) {
    if (!doc.contains(key)) throw ParseError(key, "missing field");
  }
  const double w = internal::ReadNumber(doc.at("w"), "w");
  const double p = internal::ReadNumber(doc.at("p"), "p");
  std::optional<WpmParams> params;
  try {
    params.emplace(w, p);
  } catch (const ParameterError& err) {
    throw ParseError(w > 0.0 && w < 1.0 ? "p" : "w", err.what());
  }

  if (!doc.contains("A")) throw ParseError("A", "missing field");
  const Json& rows = doc.at("A");
  if (!rows.is_array() || rows.empty()) {
    throw ParseError("A", "expected a non-empty array of rows");
  }
  std::size_t n = 0;
  std::vector<std::vector<double>> a_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_field = "A[" + std::to_string(i + 1) + "]";
    if (!rows[i].is_array()) throw ParseError(row_field, "expected an array");
    if (i == 0) n = rows[i].size();
    if (rows[i].size() != n || n == 0) {
      throw ParseError(row_field, "has " + std::to_string(rows[i].size()) +
                                      " entries, expected " +
                                      std::to_string(n == 0 ? 1 : n));
    }
    std::vector<double> row;
    for (std::size_t j = 0; j < n; ++j) {
      const std::string field = row_field + "[" + std::to_string(j + 1) + "]";
      const double v = internal::ReadNumber(rows[i][j], field);
      internal::RequireUnit(v, field);
      row.push_back(v);
    }
    a_rows.push_back(std::move(row));
  }
  std::vector<double> b = internal::ReadVector(doc, "b");
  if (b.size() != a_rows.size()) {
    throw ParseError("b", "has " + std::to_string(b.size()) +
                              " entries but A has " +
                              std::to_string(a_rows.size()) + " rows");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    internal::RequireUnit(b[i], "b[" + std::to_string(i + 1) + "]");
  }
  std::vector<double> c = internal::ReadVector(doc, "c");
  if (c.size() != n) {
    throw ParseError("c", "has " + std::to_string(c.size()) +
                              " entries but A has " + std::to_string(n) +
                              " columns");
  }
  return Problem(Matrix::FromRows(a_rows), std::move(b), std::move(c),
                 *params);
}

inline Problem ReadProblemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseProblem(buf.str());
}

inline nlohmann::ordered_json ProblemToJson(const Problem& problem) {
  using internal::Json;
  Json doc;
  doc["w"] = problem.params().w();
  doc["p"] = problem.params().p();
  Json rows = Json::array();
  for (std::size_t i = 0; i < problem.m(); ++i) {
    const auto r = problem.a().row(i);
    rows.push_back(internal::ToJson(std::vector<double>(r.begin(), r.end())));
  }
  doc["A"] = std::move(rows);
  doc["b"] = internal::ToJson(problem.b());
  doc["c"] = internal::ToJson(problem.c());
  return doc;
}

inline std::string SerializeProblem(const Problem& problem) {
  return ProblemToJson(problem).dump(2) + "\n";
}

// Accepts either {"x": [...]} or a bare array.
inline std::vector<double> ParsePoint(std::string_view text) {
  const internal::Json doc = internal::ReadDocument(text);
  if (doc.is_array()) {
    internal::Json wrapped;
    wrapped["x"] = doc;
    return internal::ReadVector(wrapped, "x");
  }
  if (!doc.is_object()) throw ParseError("x", "expected an array");
  return internal::ReadVector(doc, "x");
}

inline nlohmann::ordered_json LogToJson(const SimplificationLog& log) {
  using internal::Json;
  Json entries = Json::array();
  for (const auto& entry : log.entries) {
    Json e;
    e["rule"] = std::string(RuleName(entry.rule));
    e["row"] = entry.row + 1;
    e["column"] = entry.column + 1;
    e["old_value"] = entry.old_value;
    if (entry.witness_row) e["witness_row"] = *entry.witness_row + 1;
    entries.push_back(std::move(e));
  }
  Json out;
  out["entries"] = std::move(entries);
  out["choice_space_before"] = log.choice_space_before;
  out["choice_space_after"] = log.choice_space_after;
  return out;
}

// `seconds` fills the "timing" field; it is the only field that varies
// between runs on the same input.
inline nlohmann::ordered_json ReportToJson(const SolveReport& report,
                                           std::optional<double> seconds) {
  using internal::Json;
  Json doc;
  doc["status"] = report.feasible ? "optimal" : "infeasible";
  doc["feasible"] = report.feasible;
  doc["x_max"] = report.x_max ? internal::ToJson(*report.x_max) : Json(nullptr);
  doc["e_star"] = report.e_star ? internal::ToJson(*report.e_star) : Json(nullptr);
  doc["x_star"] =
      report.x_star ? internal::ToJson(*report.x_star) : Json(nullptr);
  doc["z_star"] = report.z_star ? Json(*report.z_star) : Json(nullptr);
  doc["residuals"] = internal::ToJson(report.residuals);
  doc["candidates_total"] = report.candidates_total;
  doc["candidates_feasible"] = report.candidates_feasible;
  Json cands = Json::array();
  for (const auto& cand : report.candidates) {
    Json c;
    c["e"] = internal::ToJson(cand.e);
    c["point"] = internal::ToJson(cand.point);
    c["feasible"] = cand.feasible;
    cands.push_back(std::move(c));
  }
  doc["candidates"] = std::move(cands);
  doc["simplified"] = report.simplified;
  doc["simplification"] = LogToJson(report.simplification);
  if (report.diagnostic) {
    Json d;
    d["kind"] = std::string(KindName(report.diagnostic->kind));
    d["row"] = report.diagnostic->row ? Json(*report.diagnostic->row + 1)
                                      : Json(nullptr);
    d["columns"] = internal::ToJson(report.diagnostic->columns);
    d["residuals"] = internal::ToJson(report.diagnostic->residuals);
    doc["diagnostic"] = std::move(d);
  } else {
    doc["diagnostic"] = nullptr;
  }
  Json timing;
  timing["seconds"] = seconds ? Json(*seconds) : Json(nullptr);
  doc["timing"] = std::move(timing);
  return doc;
}

inline nlohmann::ordered_json BudgetErrorToJson(const BudgetError& err) {
  internal::Json doc;
  doc["status"] = "budget_exceeded";
  doc["required_candidates"] = err.required();
  doc["limit"] = err.limit();
  doc["message"] = err.what();
  return doc;
}

}  // namespace wpmfre

#endif  // WPMFRE_IO_HPP_
