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

#ifndef FHH_HARNESS_HPP
#define FHH_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fhh/fracint.hpp"
#include "fhh/ineq.hpp"
#include "fhh/means.hpp"
#include "fhh/quad.hpp"

namespace fhh {

/// Malformed or invalid sweep configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CheckKind { kSandwich, kLemma, kT2, kT3, kT4, kMinM, kMeans, kCertify };

std::string_view to_string(CheckKind c);
std::optional<CheckKind> check_from_string(std::string_view name);

/// Lemma residuals above this are violations.
inline constexpr double kLemmaTolerance = 1e-7;

struct SweepConfig {
  std::vector<std::string> psi_list;   // expression texts; may use s, alpha, rho
  std::vector<double> alpha_grid;
  std::vector<double> rho_grid;
  std::vector<double> s_grid;
  std::vector<double> q_grid{1.0};
  std::vector<Interval> intervals;
  std::vector<Variant> variants{Variant::kDerivationConsistent};
  std::vector<CheckKind> checks;
  std::vector<int> r_grid{2};   // means check only
  std::vector<Proposition> propositions{Proposition::kP1, Proposition::kP2, Proposition::kP3,
                                        Proposition::kP4};
  QuadSettings tol;
  std::uint64_t seed = 1;
  int certify_grid = 12;
  int threads = 0;   // 0: FHH_THREADS or hardware concurrency

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

/// Reads the key = value configuration format (see README).
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

enum class CellStatus { kOk, kViolated, kSkipped, kError };
enum class Severity { kNone, kHard, kInformative };

std::string_view to_string(CellStatus s);
std::string_view to_string(Severity s);

/// One (check x parameter tuple) cell. The meaning of value1..3 and the
/// margins depends on the check:
///
///   sandwich  lhs, middle, rhs          margin = middle - lhs, margin2 = rhs - middle
///   lemma     side_a, side_b, residual  margin = -|residual|
///   t2..t4    gap, bound, -             margin = bound - gap
///   min_m     gap, bound, argmin        margin = bound - gap
///   means     lhs, bound, -             margin = bound - lhs
///   certify   worst_violation, samples  margin = -worst_violation
struct SweepRow {
  CheckKind check = CheckKind::kSandwich;
  std::string psi;
  double u = 0.0;
  double v = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double s = 0.0;
  double q = 0.0;
  std::optional<double> p;
  std::optional<int> r;
  std::optional<Proposition> prop;
  std::optional<Variant> variant;
  CellStatus status = CellStatus::kOk;
  bool certified = false;
  Severity severity = Severity::kNone;
  double value1 = 0.0;
  double value2 = 0.0;
  double value3 = 0.0;
  double margin = 0.0;
  double margin2 = 0.0;
  double quad_err = 0.0;
  std::string detail;
};

struct ViolationRecord {
  std::size_t row = 0;   // index into SweepResult::rows
  CheckKind check = CheckKind::kSandwich;
  Severity severity = Severity::kInformative;
  bool certified = false;
  double margin = 0.0;
  double quad_err = 0.0;
  std::vector<std::string> argv;   // reproduction command, argv[0] = "fhh"

  std::string command() const;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<ViolationRecord> violations;

  bool has_hard_violation() const;
};

/// Expected row count for a configuration.
std::size_t expected_row_count(const SweepConfig& cfg);

/// Evaluates every cell; failures are recorded in-row. Rows come back in
/// canonical cell order regardless of thread scheduling.
SweepResult run_sweep(const SweepConfig& cfg);

/// Fixed column order, 17 significant digits.
void write_csv(std::ostream& out, const SweepResult& result);
/// Rows nested by check name, plus the violation list.
void write_json(std::ostream& out, const SweepResult& result);

/// Reproduction command for a row under the configuration's tolerances,
/// certification grid and seed.
std::vector<std::string> reproduction_argv(const SweepRow& row, const SweepConfig& cfg);

// ---------------------------------------------------------------------------
// Audit of the worked example: (alpha, s, rho) = (2, 1/2, 1) and (1, 1/2, 2),
// psi(x) = x^(s alpha) on [0, 1].

struct AuditRow {
  int triple = 0;
  std::string member;      // "lhs", "middle", "rhs"
  double alpha = 0.0;
  double s = 0.0;
  double rho = 0.0;
  double paper = 0.0;      // reference value under audit
  double as_printed = 0.0;
  double derived = 0.0;
  double quadrature = 0.0;   // operator mean; same for every member row of a triple
  bool matches = false;    // |paper - as_printed| <= 1e-3
};

inline constexpr double kAuditTolerance = 1e-3;

std::vector<AuditRow> reproduce_paper(const QuadSettings& tol = {});
void print_audit(std::ostream& out, const std::vector<AuditRow>& rows);

/// %.<digits>g formatting used by tables (10) and files (17).
std::string format_real(double v, int digits);

}  // namespace fhh

#endif  // FHH_HARNESS_HPP
