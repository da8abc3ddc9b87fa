// Copyright 2026 The fhh Authors
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

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fhh/cli.hpp"
#include "fhh/harness.hpp"
#include "json.hpp"

using namespace fhh;

namespace {

SweepConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_config(in);
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

// Runs a reproduction command with --json and extracts the margins it reports.
std::vector<double> reproduce_margins(const SweepRow& row, const SweepConfig& cfg) {
  std::vector<std::string> argv = reproduction_argv(row, cfg);
  REQUIRE(argv.front() == "fhh");
  argv.erase(argv.begin());
  argv.push_back("--json");
  std::ostringstream out, err;
  const int code = cli::run(argv, out, err);
  INFO(err.str());
  REQUIRE(code == cli::kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  // JSON has no infinity; a divergent bound is written as null.
  auto num = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
  };
  switch (row.check) {
    case CheckKind::kSandwich:
      return {num(j.at(0).at("margin_left")), num(j.at(0).at("margin_right"))};
    case CheckKind::kLemma:
      return {-std::abs(num(j.at("residual")))};
    case CheckKind::kMeans:
      return {num(j.at("margin"))};
    case CheckKind::kCertify:
      return {-num(j.at("worst_violation"))};
    default:
      return {num(j.at(0).at("margin"))};
  }
}

}  // namespace

TEST_CASE("single sandwich cell") {
  SweepConfig cfg;
  cfg.psi_list = {"x^2"};
  cfg.alpha_grid = {1};
  cfg.rho_grid = {1};
  cfg.s_grid = {1};
  cfg.intervals = {{0, 1}};
  cfg.checks = {CheckKind::kSandwich};
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.rows.size() == 1);
  const SweepRow& row = r.rows[0];
  CHECK(row.status == CellStatus::kOk);
  CHECK(row.certified);
  CHECK(std::abs(row.margin - 1.0 / 12.0) <= 1e-10);
  CHECK(std::abs(row.margin2 - 1.0 / 6.0) <= 1e-10);
  CHECK(r.violations.empty());
}

TEST_CASE("empty check list gives no rows") {
  SweepConfig cfg;
  cfg.psi_list = {"x"};
  cfg.alpha_grid = {1};
  cfg.rho_grid = {1};
  cfg.s_grid = {1};
  cfg.intervals = {{0, 1}};
  CHECK(expected_row_count(cfg) == 0u);
  const SweepResult r = run_sweep(cfg);
  CHECK(r.rows.empty());
  CHECK(csv_of(r).find('\n') == csv_of(r).size() - 1);   // header only
}

TEST_CASE("lemma grid row count") {
  SweepConfig cfg;
  cfg.psi_list = {"x^2", "exp(x)"};
  cfg.alpha_grid = {0.5, 2};
  cfg.rho_grid = {1, 2};
  cfg.s_grid = {1};
  cfg.intervals = {{0, 1}};
  cfg.checks = {CheckKind::kLemma};
  const SweepResult r = run_sweep(cfg);
  CHECK(r.rows.size() == 8u);
  CHECK(expected_row_count(cfg) == 8u);
  for (const SweepRow& row : r.rows) {
    CHECK(row.status == CellStatus::kOk);
    CHECK(std::abs(row.value3) <= kLemmaTolerance);
  }
}

TEST_CASE("row counts match the enumeration") {
  const SweepConfig cfg = config_from(R"(
# mixed sweep
psi = x^2; sqrt(x); x^(s*alpha)
alpha = 0.5, 1
rho = 1, 2
s = 0.5, 1
q = 1, 2
intervals = [0, 1], [1, 3]
variants = printed, derived
checks = sandwich, lemma, t2, t3, t4, min_m, means, certify
r = 2, -3
props = 1, 2, 3, 4
certify_grid = 8
)");
  const SweepResult r = run_sweep(cfg);
  CHECK(r.rows.size() == expected_row_count(cfg));
  std::set<CheckKind> seen;
  for (const SweepRow& row : r.rows) seen.insert(row.check);
  CHECK(seen.size() == 8u);
  // q = 1 cells of t4/min are skipped, and so are means cells with u = 0.
  for (const SweepRow& row : r.rows) {
    if ((row.check == CheckKind::kT4 || row.check == CheckKind::kMinM) && row.q == 1.0) {
      CHECK(row.status == CellStatus::kSkipped);
    }
    if (row.check == CheckKind::kMeans && row.u == 0.0) CHECK(row.status == CellStatus::kSkipped);
    if (row.status == CellStatus::kViolated) CHECK(row.severity != Severity::kNone);
    if (row.severity == Severity::kHard) CHECK(row.certified);
  }
}

TEST_CASE("rows are ordered and violations point at them") {
  const SweepConfig cfg = config_from(
      "psi = sqrt(x); x^2\nalpha = 1\nrho = 2\ns = 0.5\nintervals = [0, 1]\n"
      "variants = printed, derived\nchecks = sandwich\n");
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.rows.size() == 4u);
  CHECK(r.rows[0].psi == "sqrt(x)");
  CHECK(r.rows[0].variant == Variant::kAsPrinted);
  CHECK(r.rows[1].variant == Variant::kDerivationConsistent);
  CHECK(r.rows[2].psi == "x^2");
  bool found = false;
  for (const ViolationRecord& v : r.violations) {
    CHECK(r.rows[v.row].status == CellStatus::kViolated);
    if (v.row == 0) found = true;
  }
  // The printed right constant fails for sqrt at alpha=1, rho=2, s=1/2.
  CHECK(found);
  CHECK_FALSE(r.has_hard_violation());
}

TEST_CASE("config parsing") {
  const SweepConfig cfg = config_from(
      "psi = x^2 ; exp(x)\n  alpha=0.5,1 \nrho = 1\ns = 1\nq = 1, 2.5\n"
      "intervals = [0,1],[0.5, 2]\nchecks = lemma, t2, lemma\nseed = 9\nthreads = 2\n"
      "abs_tol = 1e-9\nmax_levels = 8\n");
  CHECK(cfg.psi_list == std::vector<std::string>{"x^2", "exp(x)"});
  CHECK(cfg.alpha_grid == std::vector<double>{0.5, 1});
  CHECK(cfg.q_grid == std::vector<double>{1, 2.5});
  REQUIRE(cfg.intervals.size() == 2u);
  CHECK(cfg.intervals[1].u == 0.5);
  CHECK(cfg.intervals[1].v == 2.0);
  CHECK(cfg.checks == std::vector<CheckKind>{CheckKind::kLemma, CheckKind::kT2});
  CHECK(cfg.seed == 9u);
  CHECK(cfg.threads == 2);
  CHECK(cfg.tol.abs_tol == 1e-9);
  CHECK(cfg.tol.max_levels == 8);
  CHECK(cfg.variants == std::vector<Variant>{Variant::kDerivationConsistent});
}

TEST_CASE("config errors") {
  const std::string base = "psi = x\nalpha = 1\nrho = 1\ns = 1\nintervals = [0, 1]\nchecks = lemma\n";
  CHECK_NOTHROW(config_from(base));
  const char* bad[] = {
      "alpha = 2\n",               // duplicate
      "colour = red\n",            // unknown key
      "just text\n",               // no '='
      "q = 1, two\n",              // malformed number
      "variants = sideways\n",     // unknown variant
      "certify_grid = 4\n",        // below the minimum
      "props = 5\n",               // out of range
      "r = 1\n",                   // |r| < 2
      "max_levels = 40\n",         // quad settings
      "q = 0.5\n",                 // q < 1
  };
  for (const char* extra : bad) {
    INFO(extra);
    CHECK_THROWS_AS(config_from(base + extra), ConfigError);
  }
  CHECK_THROWS_AS(config_from("psi = x +\nalpha = 1\nrho = 1\ns = 1\nintervals = [0,1]\nchecks = lemma\n"),
                  ConfigError);
  CHECK_THROWS_AS(config_from("psi = x\nalpha = 1\nrho = 1\ns = 1.5\nintervals = [0,1]\nchecks = lemma\n"),
                  ConfigError);
  CHECK_THROWS_AS(config_from("psi = x\nalpha = 1\nrho = 1\ns = 1\nintervals = [1,0]\nchecks = lemma\n"),
                  ConfigError);
  CHECK_THROWS_AS(config_from("psi = x\nalpha = 1\nrho = 1\ns = 1\nintervals = [0,1\nchecks = lemma\n"),
                  ConfigError);
  CHECK_THROWS_AS(config_from("alpha = 1\nrho = 1\ns = 1\nintervals = [0,1]\nchecks = lemma\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/sweep.cfg"), ConfigError);
}

TEST_CASE("csv is deterministic across thread counts") {
  SweepConfig cfg = config_from(
      "psi = x^2; sqrt(x); exp(x)\nalpha = 0.5, 2\nrho = 0.5, 2\ns = 0.5, 1\nq = 1, 2\n"
      "intervals = [0, 1], [1, 3]\nvariants = printed, derived\n"
      "checks = sandwich, t2, t3, min_m\ncertify_grid = 8\n");
  cfg.threads = 1;
  const std::string one = csv_of(run_sweep(cfg));
  cfg.threads = 4;
  const std::string four = csv_of(run_sweep(cfg));
  const std::string again = csv_of(run_sweep(cfg));
  CHECK(one == four);
  CHECK(four == again);
  std::istringstream lines(one);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "check,psi,u,v,alpha,rho,s,q,p,r,prop,variant,status,certified,severity,value1,value2,"
        "value3,margin,margin2,quad_err,detail");
}

TEST_CASE("json output nests rows by check") {
  const SweepConfig cfg = config_from(
      "psi = x^2\nalpha = 1\nrho = 1\ns = 1\nintervals = [0, 1]\nchecks = lemma, sandwich\n");
  std::ostringstream out;
  write_json(out, run_sweep(cfg));
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("checks").at("lemma").size() == 1u);
  CHECK(j.at("checks").at("sandwich").size() == 1u);
  CHECK(j.at("summary").at("rows").get<int>() == 2);
  CHECK(j.at("violations").is_array());
}

TEST_CASE("reproduction commands recompute the same margins") {
  const SweepConfig cfg = config_from(
      "psi = sqrt(x); x^2\nalpha = 0.5, 2\nrho = 0.5, 2\ns = 0.5\nq = 2\n"
      "intervals = [0, 1], [1, 3]\nvariants = printed, derived\n"
      "checks = sandwich, lemma, t2, t3, t4, min_m, means, certify\nr = -2, 3\n"
      "certify_grid = 8\nseed = 31\nmax_levels = 9\n");
  const SweepResult r = run_sweep(cfg);
  int compared = 0;
  for (const SweepRow& row : r.rows) {
    if (row.status == CellStatus::kSkipped || row.status == CellStatus::kError) continue;
    const std::vector<double> m = reproduce_margins(row, cfg);
    INFO(reproduction_argv(row, cfg).size() << " " << to_string(row.check) << " " << row.psi);
    auto same = [](double a, double b) { return a == b || std::abs(a - b) <= 1e-12; };
    CHECK(same(m[0], row.margin));
    if (m.size() > 1) CHECK(same(m[1], row.margin2));
    ++compared;
  }
  CHECK(compared > 100);
  CHECK_FALSE(r.violations.empty());
  for (const ViolationRecord& v : r.violations) {
    CHECK(v.command().rfind("fhh ", 0) == 0);
    CHECK(v.argv == reproduction_argv(r.rows[v.row], cfg));
  }
}

TEST_CASE("reproduction command quoting") {
  ViolationRecord v;
  v.argv = {"fhh", "check-hh", "--psi", "x^(s*alpha)", "--u", "0"};
  CHECK(v.command() == "fhh check-hh --psi 'x^(s*alpha)' --u 0");
}

TEST_CASE("audit rows") {
  const std::vector<AuditRow> rows = reproduce_paper();
  REQUIRE(rows.size() == 6u);
  CHECK(rows[0].member == "lhs");
  CHECK(rows[0].paper == 0.25);
  CHECK(std::abs(rows[0].as_printed - 0.25) <= 1e-9);
  CHECK(rows[0].matches);
  CHECK(rows[1].member == "middle");
  CHECK(std::abs(rows[1].as_printed - 0.5) <= 1e-8);
  CHECK_FALSE(rows[1].matches);
  CHECK(std::abs(rows[2].as_printed - 0.5) <= 1e-9);
  CHECK(rows[2].matches);
  for (const AuditRow& row : rows) {
    CHECK(row.matches == (std::abs(row.paper - row.as_printed) <= kAuditTolerance));
    if (row.member == "middle") CHECK(row.quadrature == row.as_printed);
  }
  std::ostringstream out;
  print_audit(out, rows);
  CHECK(out.str().find("paper: 0.25 / computed: 0.25 / status: match") != std::string::npos);
}

TEST_CASE("formatting") {
  CHECK(format_real(0.1, 17) == "0.10000000000000001");
  CHECK(format_real(0.25, 10) == "0.25");
  CHECK(to_string(CheckKind::kMinM) == "min_m");
  CHECK(check_from_string("certify") == CheckKind::kCertify);
  CHECK_FALSE(check_from_string("nope"));
  CHECK(to_string(Severity::kNone).empty());
}
