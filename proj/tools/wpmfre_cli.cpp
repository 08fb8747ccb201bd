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

// Command-line driver.
//
// Exit status: 0 success, 1 infeasible (or point not a solution for
// `verify`), 2 input error, 3 enumeration budget exceeded.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpmfre/wpmfre.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

using Json = nlohmann::ordered_json;

std::uint64_t DefaultLimit() {
  if (const char* env = std::getenv("WPMFRE_ENUM_LIMIT")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed WPMFRE_ENUM_LIMIT=" << env << "\n";
    }
  }
  return wpmfre::kDefaultEnumerationLimit;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wpmfre::ParseError("", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Emit(const Json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw wpmfre::ParseError("", "cannot write " + out_path);
  out << text;
}

struct SolveArgs {
  std::string file;
  bool no_simplify = false;
  bool fixpoint = false;
  std::uint64_t limit = 0;
  unsigned threads = 1;
  std::string out;
};

int RunSolve(const SolveArgs& args) {
  const wpmfre::Problem problem = wpmfre::ReadProblemFile(args.file);
  const auto start = std::chrono::steady_clock::now();
  try {
    const wpmfre::SolveReport report =
        wpmfre::Solve(problem, {.simplify = !args.no_simplify,
                                .fixpoint = args.fixpoint,
                                .limit = args.limit,
                                .threads = args.threads});
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    Emit(wpmfre::ReportToJson(report, elapsed.count()), args.out);
    return report.feasible ? kExitOk : kExitInfeasible;
  } catch (const wpmfre::BudgetError& err) {
    Emit(wpmfre::BudgetErrorToJson(err), args.out);
    std::cerr << "error: " << err.what() << "\n";
    return kExitBudget;
  }
}

int RunFeasibility(const std::string& file) {
  const wpmfre::Problem problem = wpmfre::ReadProblemFile(file);
  const wpmfre::FeasibilityReport report = wpmfre::CheckFeasibility(problem);
  Json doc;
  doc["feasible"] = report.feasible;
  Json rows = Json::array();
  for (const auto& cls : report.rows) {
    Json r;
    r["row"] = cls.row + 1;
    r["j_minus"] = wpmfre::internal::ToJson(cls.j_minus);
    r["j_infinity"] = wpmfre::internal::ToJson(cls.j_infinity);
    r["j_active"] = wpmfre::internal::ToJson(cls.j_active);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (report.failed_row) {
    const auto& cls = report.rows[*report.failed_row];
    doc["failed_row"] = cls.row + 1;
    for (std::size_t j : cls.j_minus) {
      std::cerr << "row " << cls.row + 1 << ": entry (" << cls.row + 1 << ","
                << j + 1 << ") exceeds b_i / w^(1/p)\n";
    }
    if (cls.j_minus.empty()) {
      std::cerr << "row " << cls.row + 1 << ": no column can reach b_i\n";
    }
  } else {
    doc["failed_row"] = nullptr;
  }
  doc["x_max"] = report.max_solution
                     ? wpmfre::internal::ToJson(report.max_solution->global)
                     : Json(nullptr);
  doc["residuals"] = wpmfre::internal::ToJson(report.residuals);
  Emit(doc, "");
  return report.feasible ? kExitOk : kExitInfeasible;
}

int RunSimplify(const std::string& file, bool fixpoint,
                const std::string& out) {
  const wpmfre::Problem problem = wpmfre::ReadProblemFile(file);
  if (!wpmfre::AllRowsFeasible(wpmfre::ClassifyRows(problem))) {
    std::cerr << "error: some row has no solution; nothing to simplify\n";
    return kExitInfeasible;
  }
  const wpmfre::SimplifyResult result =
      wpmfre::SimplifyPipeline(problem, {.fixpoint = fixpoint});
  Json doc;
  doc["problem"] = wpmfre::ProblemToJson(result.problem);
  doc["simplification"] = wpmfre::LogToJson(result.log);
  Emit(doc, out);
  return kExitOk;
}

int RunVerify(const std::string& problem_file, const std::string& point_file,
              double tol) {
  const wpmfre::Problem problem = wpmfre::ReadProblemFile(problem_file);
  const std::vector<double> x = wpmfre::ParsePoint(ReadFile(point_file));
  const wpmfre::oracle::MembershipResult result =
      wpmfre::oracle::CheckMembership(problem, x, tol);
  Json doc;
  doc["member"] = result.member;
  doc["tolerance"] = tol;
  doc["max_residual"] = result.max_residual();
  doc["residuals"] = wpmfre::internal::ToJson(result.residuals);
  Emit(doc, "");
  return result.member ? kExitOk : kExitInfeasible;
}

struct GenerateArgs {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double w = 0.75;
  double p = 3.0;
  std::uint64_t seed = 0;
  std::string out;
};

int RunGenerate(const GenerateArgs& args) {
  const wpmfre::GeneratedInstance inst = wpmfre::GenerateInstance(
      args.rows, args.cols, wpmfre::WpmParams(args.w, args.p), args.seed);
  Emit(wpmfre::ProblemToJson(inst.problem), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear optimization over max-weighted-power-mean fuzzy "
               "relational equalities"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  solve_args.limit = DefaultLimit();
  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("file", solve_args.file, "Problem file")->required();
  solve->add_flag("--no-simplify", solve_args.no_simplify,
                  "Skip the simplification rules");
  solve->add_flag("--fixpoint", solve_args.fixpoint,
                  "Repeat simplification until nothing changes");
  solve->add_option("--limit", solve_args.limit,
                    "Maximum number of choice vectors to expand");
  solve->add_option("--threads", solve_args.threads,
                    "Worker threads for candidate enumeration");
  solve->add_option("--out", solve_args.out, "Write the report here");

  std::string feas_file;
  auto* feasibility =
      app.add_subcommand("feasibility", "Decide whether S(A,b) is non-empty");
  feasibility->add_option("file", feas_file, "Problem file")->required();

  std::string simplify_file;
  std::string simplify_out;
  bool simplify_fixpoint = false;
  auto* simplify =
      app.add_subcommand("simplify", "Apply the zeroing rules and print the "
                                     "reduced problem");
  simplify->add_option("file", simplify_file, "Problem file")->required();
  simplify->add_flag("--fixpoint", simplify_fixpoint,
                     "Repeat until nothing changes");
  simplify->add_option("--out", simplify_out, "Write the result here");

  std::string verify_problem;
  std::string verify_point;
  double verify_tol = 1e-3;
  auto* verify = app.add_subcommand(
      "verify", "Check a point against every equality of a problem");
  verify->add_option("problem", verify_problem, "Problem file")->required();
  verify->add_option("point", verify_point,
                     "Point file: {\"x\": [...]} or a bare array")
      ->required();
  verify->add_option("--tol", verify_tol, "Residual tolerance")
      ->capture_default_str();

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand(
      "generate", "Emit a random feasible instance built from a hidden point");
  generate->add_option("--rows", gen_args.rows, "m")->required();
  generate->add_option("--cols", gen_args.cols, "n")->required();
  generate->add_option("--w", gen_args.w, "Weight in (0,1)")
      ->capture_default_str();
  generate->add_option("--p", gen_args.p, "Exponent > 0")
      ->capture_default_str();
  generate->add_option("--seed", gen_args.seed, "RNG seed")
      ->capture_default_str();
  generate->add_option("--out", gen_args.out, "Write the problem here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve) return RunSolve(solve_args);
    if (*feasibility) return RunFeasibility(feas_file);
    if (*simplify) {
      return RunSimplify(simplify_file, simplify_fixpoint, simplify_out);
    }
    if (*verify) return RunVerify(verify_problem, verify_point, verify_tol);
    if (*generate) return RunGenerate(gen_args);
  } catch (const wpmfre::BudgetError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitBudget;
  } catch (const wpmfre::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
