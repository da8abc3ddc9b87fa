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

#include "fhh/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>
#include <thread>

#include "fhh/errors.hpp"
#include "fhh/expr.hpp"
#include "json.hpp"

namespace fhh {

std::string format_real(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string_view to_string(CheckKind c) {
  switch (c) {
    case CheckKind::kSandwich: return "sandwich";
    case CheckKind::kLemma: return "lemma";
    case CheckKind::kT2: return "t2";
    case CheckKind::kT3: return "t3";
    case CheckKind::kT4: return "t4";
    case CheckKind::kMinM: return "min_m";
    case CheckKind::kMeans: return "means";
    case CheckKind::kCertify: return "certify";
  }
  return "?";
}

std::optional<CheckKind> check_from_string(std::string_view name) {
  for (CheckKind c : {CheckKind::kSandwich, CheckKind::kLemma, CheckKind::kT2, CheckKind::kT3,
                      CheckKind::kT4, CheckKind::kMinM, CheckKind::kMeans, CheckKind::kCertify}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::kOk: return "ok";
    case CellStatus::kViolated: return "violated";
    case CellStatus::kSkipped: return "skipped";
    case CellStatus::kError: return "error";
  }
  return "?";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::kNone: return "";
    case Severity::kHard: return "hard";
    case Severity::kInformative: return "informative";
  }
  return "?";
}

namespace {

bool has_variants(CheckKind c) {
  switch (c) {
    case CheckKind::kSandwich:
    case CheckKind::kT2:
    case CheckKind::kT3:
    case CheckKind::kT4:
    case CheckKind::kMinM: return true;
    default: return false;
  }
}

GapTheorem theorem_of(CheckKind c) {
  switch (c) {
    case CheckKind::kT2: return GapTheorem::kT2;
    case CheckKind::kT3: return GapTheorem::kT3;
    case CheckKind::kT4: return GapTheorem::kT4;
    default: return GapTheorem::kMinM;
  }
}

// ---------------------------------------------------------------------------
// Config parsing.

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    std::string item = trim(s.substr(start, at == std::string_view::npos ? s.npos : at - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

double parse_real(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last || !std::isfinite(v)) {
    throw ConfigError("config: '" + key + "' has a malformed number '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
  long long v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last) {
    throw ConfigError("config: '" + key + "' has a malformed integer '" + text + "'");
  }
  return v;
}

std::vector<double> parse_reals(const std::string& value, const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split(value, ',')) out.push_back(parse_real(item, key));
  return out;
}

Variant parse_variant(const std::string& name) {
  if (name == "printed" || name == "as_printed") return Variant::kAsPrinted;
  if (name == "derived" || name == "derivation_consistent") return Variant::kDerivationConsistent;
  throw ConfigError("config: unknown variant '" + name + "'");
}

std::vector<Interval> parse_intervals(const std::string& value) {
  static const std::regex pair(R"(\[\s*([^,\]\s]+)\s*,\s*([^\]\s]+)\s*\])");
  std::vector<Interval> out;
  std::string rest = value;
  std::smatch m;
  while (std::regex_search(rest, m, pair)) {
    if (!trim(m.prefix().str()).empty() && trim(m.prefix().str()) != ",") {
      throw ConfigError("config: malformed 'intervals' near '" + m.prefix().str() + "'");
    }
    out.push_back({parse_real(m[1].str(), "intervals"), parse_real(m[2].str(), "intervals")});
    rest = m.suffix().str();
  }
  if (!trim(rest).empty()) throw ConfigError("config: malformed 'intervals' near '" + rest + "'");
  return out;
}

// ---------------------------------------------------------------------------
// Cells.

struct Cell {
  CheckKind check = CheckKind::kMeans;
  std::size_t psi = 0;
  Interval iv;
  double alpha = 0.0;
  double rho = 0.0;
  double s = 0.0;
  double q = 0.0;
  std::optional<Variant> variant;
  int r = 0;
  Proposition prop = Proposition::kP1;
};

std::vector<Cell> enumerate_cells(const SweepConfig& cfg) {
  std::vector<Cell> cells;
  for (CheckKind check : cfg.checks) {
    if (check == CheckKind::kMeans) {
      for (const Interval& iv : cfg.intervals)
        for (int r : cfg.r_grid)
          for (double q : cfg.q_grid)
            for (Proposition prop : cfg.propositions) {
              Cell c;
              c.check = check;
              c.iv = iv;
              c.q = q;
              c.r = r;
              c.prop = prop;
              cells.push_back(c);
            }
      continue;
    }
    std::vector<std::optional<Variant>> variants;
    if (has_variants(check)) {
      for (Variant v : cfg.variants) variants.emplace_back(v);
    } else {
      variants.emplace_back(std::nullopt);
    }
    for (std::size_t psi = 0; psi < cfg.psi_list.size(); ++psi)
      for (const Interval& iv : cfg.intervals)
        for (double alpha : cfg.alpha_grid)
          for (double rho : cfg.rho_grid)
            for (double s : cfg.s_grid)
              for (double q : cfg.q_grid)
                for (const auto& variant : variants) {
                  Cell c{check, psi, iv, alpha, rho, s, q, variant};
                  cells.push_back(c);
                }
  }
  return cells;
}

ConstantTable bindings(double s, double alpha, double rho) {
  return ConstantTable{{"s", s}, {"alpha", alpha}, {"rho", rho}};
}

Interval psi_domain(const Interval& iv, double rho) {
  return {std::pow(iv.u, rho), std::pow(iv.v, rho)};
}

void evaluate_means(const Cell& c, SweepRow& row) {
  row.r = c.r;
  row.prop = c.prop;
  if (!(c.iv.u > 0.0)) {
    row.status = CellStatus::kSkipped;
    row.detail = "means need u > 0";
    return;
  }
  const bool power_family = c.prop == Proposition::kP1 || c.prop == Proposition::kP2;
  const MeansReport rep = check_proposition(c.prop, c.iv.u, c.iv.v, c.r, c.q);
  row.value1 = rep.lhs;
  row.value2 = rep.bound;
  row.margin = rep.bound - rep.lhs;
  row.certified = power_family;
  if (!rep.holds) {
    row.status = CellStatus::kViolated;
    row.severity = power_family ? Severity::kHard : Severity::kInformative;
  }
}

void evaluate_cell(const SweepConfig& cfg, const Cell& c, SweepRow& row) {
  if (c.check == CheckKind::kMeans) {
    evaluate_means(c, row);
    return;
  }
  const Expr psi = parse(cfg.psi_list[c.psi], bindings(c.s, c.alpha, c.rho));
  FracParams fp{c.alpha, c.rho, c.s, c.q, std::nullopt};
  if (c.q > 1.0) fp.p = FracParams::conjugate(c.q);
  row.p = fp.p;
  fp.validate();
  const Interval domain = psi_domain(c.iv, c.rho);

  auto note = [&row](const std::string& text) {
    if (!row.detail.empty()) row.detail += "; ";
    row.detail += text;
  };

  switch (c.check) {
    case CheckKind::kCertify:
    case CheckKind::kSandwich: {
      ConvexityCertificate cert;
      try {
        cert = certify_s_convex(psi, domain, c.s, c.alpha, cfg.certify_grid, cfg.seed);
      } catch (const std::exception& e) {
        note(std::string("certification failed: ") + e.what());
      }
      row.certified = cert.is_certified;
      if (c.check == CheckKind::kCertify) {
        row.value1 = cert.worst_violation;
        row.value2 = static_cast<double>(cert.samples);
        row.margin = -cert.worst_violation;
        if (cert.witness) {
          note("witness a=" + format_real(cert.witness->a, 17) +
               " b=" + format_real(cert.witness->b, 17) +
               " t=" + format_real(cert.witness->t, 17));
        }
        return;
      }
      const SandwichReport rep = hh_sandwich(psi, c.iv, fp, *c.variant, cfg.tol);
      row.value1 = rep.lhs;
      row.value2 = rep.middle;
      row.value3 = rep.rhs;
      row.margin = rep.margin_left;
      row.margin2 = rep.margin_right;
      row.quad_err = rep.quad_err;
      if (!(rep.holds_left && rep.holds_right)) {
        row.status = CellStatus::kViolated;
        const bool hard = row.certified && *c.variant == Variant::kDerivationConsistent;
        row.severity = hard ? Severity::kHard : Severity::kInformative;
      }
      return;
    }
    case CheckKind::kLemma: {
      const LemmaReport rep = lemma_identity(psi, c.iv, c.alpha, c.rho, cfg.tol);
      row.certified = true;
      row.value1 = rep.side_a;
      row.value2 = rep.side_b;
      row.value3 = rep.residual;
      row.margin = -std::abs(rep.residual);
      row.quad_err = rep.quad_err;
      if (std::abs(rep.residual) > kLemmaTolerance + rep.quad_err) {
        row.status = CellStatus::kViolated;
        row.severity = Severity::kHard;
      }
      return;
    }
    default: break;
  }

  // Gap bounds.
  if ((c.check == CheckKind::kT4 || c.check == CheckKind::kMinM) && !(c.q > 1.0)) {
    row.status = CellStatus::kSkipped;
    row.detail = "requires q > 1";
    return;
  }
  ConvexityCertificate cert;
  try {
    cert = certify_derivative_power(psi, domain, c.s, c.alpha, c.q, cfg.certify_grid, cfg.seed);
  } catch (const std::exception& e) {
    note(std::string("certification failed: ") + e.what());
  }
  row.certified = cert.is_certified;
  const GapBoundReport rep = gap_bound(theorem_of(c.check), psi, c.iv, fp, *c.variant, cfg.tol);
  row.value1 = rep.gap;
  row.value2 = rep.bound;
  row.value3 = c.check == CheckKind::kMinM ? static_cast<double>(rep.argmin) : 0.0;
  row.margin = rep.bound - rep.gap;
  row.quad_err = rep.quad_err;
  if (rep.components) {
    note("components " + format_real((*rep.components)[0], 17) + " " +
         format_real((*rep.components)[1], 17) + " " + format_real((*rep.components)[2], 17));
  }
  if (!rep.holds) {
    row.status = CellStatus::kViolated;
    const bool hard = row.certified && *c.variant == Variant::kDerivationConsistent;
    row.severity = hard ? Severity::kHard : Severity::kInformative;
  }
}

SweepRow run_cell(const SweepConfig& cfg, const Cell& c) {
  SweepRow row;
  row.check = c.check;
  row.u = c.iv.u;
  row.v = c.iv.v;
  row.q = c.q;
  row.variant = c.variant;
  if (c.check != CheckKind::kMeans) {
    row.psi = cfg.psi_list[c.psi];
    row.alpha = c.alpha;
    row.rho = c.rho;
    row.s = c.s;
  }
  try {
    evaluate_cell(cfg, c, row);
  } catch (const std::exception& e) {
    row.status = CellStatus::kError;
    row.severity = Severity::kNone;
    row.detail = e.what();
  }
  return row;
}

int worker_count(const SweepConfig& cfg, std::size_t cells) {
  int n = cfg.threads;
  if (n <= 0) {
    if (const char* env = std::getenv("FHH_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(cells, 1)));
}

std::string shell_quote(const std::string& s) {
  const bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("-_.+=/:,").find(c) !=
                                                              std::string_view::npos;
  });
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_real(const std::optional<double>& v) {
  return v ? format_real(*v, 17) : std::string();
}

}  // namespace

void SweepConfig::validate() const {
  if (checks.empty()) return;   // nothing to evaluate
  const bool fractional = std::any_of(checks.begin(), checks.end(),
                                      [](CheckKind c) { return c != CheckKind::kMeans; });
  if (fractional) {
    if (psi_list.empty()) throw ConfigError("config: psi list must be non-empty");
    if (alpha_grid.empty() || rho_grid.empty() || s_grid.empty()) {
      throw ConfigError("config: alpha, rho and s grids must be non-empty");
    }
  }
  if (q_grid.empty()) throw ConfigError("config: q grid must be non-empty");
  if (intervals.empty()) throw ConfigError("config: intervals must be non-empty");
  if (variants.empty()) throw ConfigError("config: variants must be non-empty");
  for (double a : alpha_grid)
    if (!(a > 0.0)) throw ConfigError("config: alpha > 0 required");
  for (double r : rho_grid)
    if (!(r > 0.0)) throw ConfigError("config: rho > 0 required");
  for (double s : s_grid)
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("config: 0 < s <= 1 required");
  for (double q : q_grid)
    if (!(q >= 1.0)) throw ConfigError("config: q >= 1 required");
  for (const Interval& iv : intervals) {
    if (!(iv.u >= 0.0 && iv.u < iv.v)) throw ConfigError("config: intervals need 0 <= u < v");
  }
  for (int r : r_grid) {
    if (std::abs(r) < 2) throw ConfigError("config: |r| >= 2 required");
  }
  if (certify_grid < 8) throw ConfigError("config: certify_grid >= 8 required");
  try {
    tol.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const std::string& text : psi_list) {
    try {
      parse(text, bindings(1.0, 1.0, 1.0));
    } catch (const ParseError& e) {
      throw ConfigError("config: psi '" + text + "': " + e.what());
    }
  }
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  int line_no = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (seen[key]++) throw ConfigError("config: duplicate key '" + key + "'");

    if (key == "psi") {
      cfg.psi_list = split(value, ';');
    } else if (key == "alpha") {
      cfg.alpha_grid = parse_reals(value, key);
    } else if (key == "rho") {
      cfg.rho_grid = parse_reals(value, key);
    } else if (key == "s") {
      cfg.s_grid = parse_reals(value, key);
    } else if (key == "q") {
      cfg.q_grid = parse_reals(value, key);
    } else if (key == "intervals") {
      cfg.intervals = parse_intervals(value);
    } else if (key == "variants") {
      cfg.variants.clear();
      for (const std::string& name : split(value, ',')) cfg.variants.push_back(parse_variant(name));
    } else if (key == "checks") {
      cfg.checks.clear();
      for (const std::string& name : split(value, ',')) {
        const auto check = check_from_string(name);
        if (!check) throw ConfigError("config: unknown check '" + name + "'");
        if (std::find(cfg.checks.begin(), cfg.checks.end(), *check) == cfg.checks.end()) {
          cfg.checks.push_back(*check);
        }
      }
    } else if (key == "r") {
      cfg.r_grid.clear();
      for (const std::string& item : split(value, ',')) {
        cfg.r_grid.push_back(static_cast<int>(parse_integer(item, key)));
      }
    } else if (key == "props") {
      cfg.propositions.clear();
      for (const std::string& item : split(value, ',')) {
        const long long n = parse_integer(item, key);
        if (n < 1 || n > 4) throw ConfigError("config: props must be in 1..4");
        cfg.propositions.push_back(static_cast<Proposition>(n));
      }
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_integer(value, key));
    } else if (key == "abs_tol") {
      cfg.tol.abs_tol = parse_real(value, key);
    } else if (key == "rel_tol") {
      cfg.tol.rel_tol = parse_real(value, key);
    } else if (key == "max_levels") {
      cfg.tol.max_levels = static_cast<int>(parse_integer(value, key));
    } else if (key == "fallback_subdivisions") {
      cfg.tol.fallback_subdivisions = static_cast<int>(parse_integer(value, key));
    } else if (key == "certify_grid") {
      cfg.certify_grid = static_cast<int>(parse_integer(value, key));
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_integer(value, key));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_sweep_config(in);
}

std::size_t expected_row_count(const SweepConfig& cfg) {
  std::size_t total = 0;
  const std::size_t grid = cfg.psi_list.size() * cfg.intervals.size() * cfg.alpha_grid.size() *
                           cfg.rho_grid.size() * cfg.s_grid.size() * cfg.q_grid.size();
  for (CheckKind c : cfg.checks) {
    if (c == CheckKind::kMeans) {
      total += cfg.intervals.size() * cfg.r_grid.size() * cfg.q_grid.size() *
               cfg.propositions.size();
    } else {
      total += grid * (has_variants(c) ? cfg.variants.size() : 1);
    }
  }
  return total;
}

bool SweepResult::has_hard_violation() const {
  return std::any_of(violations.begin(), violations.end(),
                     [](const ViolationRecord& v) { return v.severity == Severity::kHard; });
}

std::string ViolationRecord::command() const {
  std::string out;
  for (const std::string& a : argv) {
    if (!out.empty()) out += ' ';
    out += shell_quote(a);
  }
  return out;
}

std::vector<std::string> reproduction_argv(const SweepRow& row, const SweepConfig& cfg) {
  const QuadSettings& tol = cfg.tol;
  auto real = [](double v) { return format_real(v, 17); };
  std::vector<std::string> argv{"fhh"};
  auto add = [&argv](std::string flag, std::string value) {
    argv.push_back(std::move(flag));
    argv.push_back(std::move(value));
  };
  auto variant_flag = [&] {
    add("--variant", row.variant == Variant::kAsPrinted ? "printed" : "derived");
  };
  auto common = [&] {
    add("--psi", row.psi);
    add("--u", real(row.u));
    add("--v", real(row.v));
    add("--alpha", real(row.alpha));
    add("--rho", real(row.rho));
    add("--s", real(row.s));
  };
  switch (row.check) {
    case CheckKind::kSandwich:
      argv.push_back("check-hh");
      common();
      variant_flag();
      break;
    case CheckKind::kLemma:
      argv.push_back("check-lemma");
      common();
      break;
    case CheckKind::kMeans:
      argv.push_back("means");
      add("--prop", std::to_string(static_cast<int>(row.prop.value_or(Proposition::kP1))));
      add("--u", real(row.u));
      add("--v", real(row.v));
      add("--r", std::to_string(row.r.value_or(2)));
      add("--q", real(row.q));
      return argv;
    case CheckKind::kCertify:
      argv.push_back("certify");
      add("--psi", row.psi);
      add("--u", real(std::pow(row.u, row.rho)));
      add("--v", real(std::pow(row.v, row.rho)));
      add("--s", real(row.s));
      add("--alpha", real(row.alpha));
      add("--rho", real(row.rho));
      add("--grid", std::to_string(cfg.certify_grid));
      add("--seed", std::to_string(cfg.seed));
      return argv;
    default:
      argv.push_back("check-gap");
      add("--theorem", row.check == CheckKind::kMinM ? "min" : std::string(to_string(row.check)));
      common();
      add("--q", real(row.q));
      if (row.p) add("--p", real(*row.p));
      variant_flag();
      break;
  }
  add("--abs-tol", real(tol.abs_tol));
  add("--rel-tol", real(tol.rel_tol));
  add("--max-levels", std::to_string(tol.max_levels));
  add("--fallback-subdivisions", std::to_string(tol.fallback_subdivisions));
  return argv;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<Cell> cells = enumerate_cells(cfg);
  SweepResult result;
  result.rows.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      result.rows[i] = run_cell(cfg, cells[i]);
    }
  };
  const int workers = worker_count(cfg, cells.size());
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (row.status != CellStatus::kViolated) continue;
    ViolationRecord rec;
    rec.row = i;
    rec.check = row.check;
    rec.severity = row.severity;
    rec.certified = row.certified;
    rec.margin = row.check == CheckKind::kSandwich ? std::min(row.margin, row.margin2) : row.margin;
    rec.quad_err = row.quad_err;
    rec.argv = reproduction_argv(row, cfg);
    result.violations.push_back(std::move(rec));
  }
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "check,psi,u,v,alpha,rho,s,q,p,r,prop,variant,status,certified,severity,"
         "value1,value2,value3,margin,margin2,quad_err,detail\n";
  auto real = [](double v) { return format_real(v, 17); };
  for (const SweepRow& row : result.rows) {
    const bool means = row.check == CheckKind::kMeans;
    out << to_string(row.check) << ',' << csv_quote(row.psi) << ',' << real(row.u) << ','
        << real(row.v) << ',' << (means ? "" : real(row.alpha)) << ','
        << (means ? "" : real(row.rho)) << ',' << (means ? "" : real(row.s)) << ',' << real(row.q)
        << ',' << opt_real(row.p) << ',' << (row.r ? std::to_string(*row.r) : "") << ','
        << (row.prop ? to_string(*row.prop) : "") << ','
        << (row.variant ? to_string(*row.variant) : "") << ',' << to_string(row.status) << ','
        << (row.certified ? 1 : 0) << ',' << to_string(row.severity) << ',' << real(row.value1)
        << ',' << real(row.value2) << ',' << real(row.value3) << ',' << real(row.margin) << ','
        << real(row.margin2) << ',' << real(row.quad_err) << ',' << csv_quote(row.detail) << '\n';
  }
}

void write_json(std::ostream& out, const SweepResult& result) {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json checks = ordered_json::object();
  for (const SweepRow& row : result.rows) {
    ordered_json j;
    if (row.check != CheckKind::kMeans) {
      j["psi"] = row.psi;
      j["alpha"] = row.alpha;
      j["rho"] = row.rho;
      j["s"] = row.s;
    }
    j["u"] = row.u;
    j["v"] = row.v;
    j["q"] = row.q;
    if (row.p) j["p"] = *row.p;
    if (row.r) j["r"] = *row.r;
    if (row.prop) j["prop"] = to_string(*row.prop);
    if (row.variant) j["variant"] = to_string(*row.variant);
    j["status"] = to_string(row.status);
    j["certified"] = row.certified;
    if (row.severity != Severity::kNone) j["severity"] = to_string(row.severity);
    j["values"] = {row.value1, row.value2, row.value3};
    j["margin"] = row.margin;
    j["margin2"] = row.margin2;
    j["quad_err"] = row.quad_err;
    if (!row.detail.empty()) j["detail"] = row.detail;
    checks[std::string(to_string(row.check))].push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  ordered_json violations = ordered_json::array();
  for (const ViolationRecord& v : result.violations) {
    violations.push_back({{"row", v.row},
                          {"check", to_string(v.check)},
                          {"severity", to_string(v.severity)},
                          {"certified", v.certified},
                          {"margin", v.margin},
                          {"quad_err", v.quad_err},
                          {"command", v.command()}});
  }
  doc["violations"] = std::move(violations);
  doc["summary"] = {{"rows", result.rows.size()},
                    {"violations", result.violations.size()},
                    {"hard", std::count_if(result.violations.begin(), result.violations.end(),
                                           [](const ViolationRecord& v) {
                                             return v.severity == Severity::kHard;
                                           })}};
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

std::vector<AuditRow> reproduce_paper(const QuadSettings& tol) {
  struct Triple {
    double alpha, s, rho;
    double printed[3];
  };
  const Triple triples[2] = {{2.0, 0.5, 1.0, {0.25, 0.333, 0.5}},
                             {1.0, 0.5, 2.0, {0.35355, 0.5, 0.8}}};
  const char* members[3] = {"lhs", "middle", "rhs"};
  const Interval unit{0.0, 1.0};

  std::vector<AuditRow> rows;
  for (int k = 0; k < 2; ++k) {
    const Triple& t = triples[k];
    const Expr psi = parse("x^(s*alpha)", bindings(t.s, t.alpha, t.rho));
    const FracParams fp{t.alpha, t.rho, t.s, 1.0, std::nullopt};
    const SandwichReport printed = hh_sandwich(psi, unit, fp, Variant::kAsPrinted, tol);
    const SandwichReport derived = hh_sandwich(psi, unit, fp, Variant::kDerivationConsistent, tol);
    const double as_printed[3] = {printed.lhs, printed.middle, printed.rhs};
    const double consistent[3] = {derived.lhs, derived.middle, derived.rhs};
    for (int m = 0; m < 3; ++m) {
      AuditRow row;
      row.triple = k + 1;
      row.member = members[m];
      row.alpha = t.alpha;
      row.s = t.s;
      row.rho = t.rho;
      row.paper = t.printed[m];
      row.as_printed = as_printed[m];
      row.derived = consistent[m];
      row.quadrature = printed.middle;
      row.matches = std::abs(row.paper - row.as_printed) <= kAuditTolerance;
      rows.push_back(row);
    }
  }
  return rows;
}

void print_audit(std::ostream& out, const std::vector<AuditRow>& rows) {
  out << "Worked example audit: psi(x) = x^(s*alpha) on [0, 1]; agreement threshold "
      << format_real(kAuditTolerance, 10) << "\n";
  int current = 0;
  for (const AuditRow& row : rows) {
    if (row.triple != current) {
      current = row.triple;
      out << "triple " << row.triple << ": alpha=" << format_real(row.alpha, 10)
          << " s=" << format_real(row.s, 10) << " rho=" << format_real(row.rho, 10)
          << " (operator mean by quadrature: " << format_real(row.quadrature, 10) << ")\n";
    }
    char member[16];
    std::snprintf(member, sizeof member, "%-7s", row.member.c_str());
    out << "  " << member << "paper: " << format_real(row.paper, 10)
        << " / computed: " << format_real(row.as_printed, 10)
        << " / status: " << (row.matches ? "match" : "discrepancy")
        << " | derivation_consistent: " << format_real(row.derived, 10) << "\n";
  }
}

}  // namespace fhh
