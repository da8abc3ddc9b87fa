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

#include "fhh/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fhh/errors.hpp"
#include "fhh/expr.hpp"
#include "fhh/fracint.hpp"
#include "fhh/harness.hpp"
#include "fhh/ineq.hpp"
#include "fhh/means.hpp"
#include "fhh/quad.hpp"
#include "json.hpp"

namespace fhh::cli {

namespace {

using nlohmann::ordered_json;

struct PsiOptions {
  std::string psi;
  double u = 0.0;
  double v = 1.0;
  double alpha = 1.0;
  double rho = 1.0;
  double s = 1.0;
};

struct Options {
  PsiOptions f;
  QuadSettings tol;
  bool json = false;

  std::string variant = "both";
  std::string theorem;
  std::string side = "left";
  double q = 1.0;
  std::optional<double> p;
  int grid = 12;
  std::uint64_t seed = kDefaultCertifySeed;
  std::optional<double> derivative_q;

  int prop = 1;
  int r = 2;

  std::string config;
  std::string out_csv;
  std::string out_json;
  int threads = 0;
};

std::string num(double v) { return format_real(v, 10); }

void add_tolerance(CLI::App* cmd, Options& o) {
  cmd->add_option("--abs-tol", o.tol.abs_tol, "Absolute quadrature tolerance")
      ->capture_default_str();
  cmd->add_option("--rel-tol", o.tol.rel_tol, "Relative quadrature tolerance")
      ->capture_default_str();
  cmd->add_option("--max-levels", o.tol.max_levels, "Tanh-sinh refinement levels")
      ->capture_default_str();
  cmd->add_option("--fallback-subdivisions", o.tol.fallback_subdivisions,
                  "Gauss-Kronrod subdivision budget")
      ->capture_default_str();
}

void add_psi(CLI::App* cmd, Options& o, bool with_s = true) {
  cmd->add_option("--psi", o.f.psi, "Function of x; may use s, alpha, rho")->required();
  cmd->add_option("--u", o.f.u, "Left endpoint")->capture_default_str();
  cmd->add_option("--v", o.f.v, "Right endpoint")->capture_default_str();
  cmd->add_option("--alpha", o.f.alpha, "Fractional order")->capture_default_str();
  cmd->add_option("--rho", o.f.rho, "Katugampola parameter")->capture_default_str();
  if (with_s) cmd->add_option("--s", o.f.s, "Convexity parameter")->capture_default_str();
}

void add_variant(CLI::App* cmd, Options& o) {
  cmd->add_option("--variant", o.variant, "Constant set")
      ->check(CLI::IsMember({"printed", "derived", "both"}))
      ->capture_default_str();
}

std::vector<Variant> variants_of(const std::string& name) {
  if (name == "printed") return {Variant::kAsPrinted};
  if (name == "derived") return {Variant::kDerivationConsistent};
  return {Variant::kAsPrinted, Variant::kDerivationConsistent};
}

Expr parse_psi(const Options& o) {
  return parse(o.f.psi, {{"s", o.f.s}, {"alpha", o.f.alpha}, {"rho", o.f.rho}});
}

FracParams frac_params(const Options& o) {
  FracParams fp{o.f.alpha, o.f.rho, o.f.s, o.q, o.p};
  fp.validate();
  return fp;
}

Interval interval(const Options& o) {
  Interval iv{o.f.u, o.f.v};
  iv.validate();
  return iv;
}

void print_row(std::ostream& out, const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, i == 0 ? "%-22s" : " %-18s", cells[i].c_str());
    line += buf;
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  out << line << '\n';
}

// ---------------------------------------------------------------------------

int cmd_eval_integral(const Options& o, std::ostream& out) {
  const Expr psi = parse_psi(o);
  const Interval iv = interval(o);
  QuadResult r;
  if (o.side == "left") {
    r = katugampola(Side::kLeft, psi, iv, o.f.alpha, o.f.rho, o.tol);
  } else if (o.side == "right") {
    r = katugampola(Side::kRight, psi, iv, o.f.alpha, o.f.rho, o.tol);
  } else {
    r = operator_mean(psi, iv, o.f.alpha, o.f.rho, o.tol);
  }
  if (o.json) {
    out << ordered_json{{"side", o.side},
                        {"value", r.value},
                        {"err_estimate", r.err_estimate},
                        {"evaluations", r.evaluations}}
               .dump()
        << '\n';
  } else {
    out << o.side << " = " << num(r.value) << "  (error estimate " << num(r.err_estimate) << ", "
        << r.evaluations << " evaluations)\n";
  }
  return kExitOk;
}

int cmd_check_hh(const Options& o, std::ostream& out) {
  const Expr psi = parse_psi(o);
  const Interval iv = interval(o);
  const FracParams fp = frac_params(o);
  ordered_json reports = ordered_json::array();
  if (!o.json) print_row(out, {"variant", "lhs", "middle", "rhs", "left", "right"});
  for (Variant v : variants_of(o.variant)) {
    const SandwichReport r = hh_sandwich(psi, iv, fp, v, o.tol);
    if (o.json) {
      reports.push_back({{"variant", to_string(v)},
                         {"lhs", r.lhs},
                         {"middle", r.middle},
                         {"rhs", r.rhs},
                         {"margin_left", r.margin_left},
                         {"margin_right", r.margin_right},
                         {"holds_left", r.holds_left},
                         {"holds_right", r.holds_right},
                         {"quad_err", r.quad_err}});
    } else {
      print_row(out, {std::string(to_string(v)), num(r.lhs), num(r.middle), num(r.rhs),
                      r.holds_left ? "holds" : "violated", r.holds_right ? "holds" : "violated"});
    }
  }
  if (o.json) out << reports.dump() << '\n';
  return kExitOk;
}

int cmd_check_lemma(const Options& o, std::ostream& out) {
  const Expr psi = parse_psi(o);
  const LemmaReport r = lemma_identity(psi, interval(o), o.f.alpha, o.f.rho, o.tol);
  const bool holds = std::abs(r.residual) <= kLemmaTolerance + r.quad_err;
  if (o.json) {
    out << ordered_json{{"side_a", r.side_a},
                        {"side_b", r.side_b},
                        {"residual", r.residual},
                        {"quad_err", r.quad_err},
                        {"holds", holds}}
               .dump()
        << '\n';
  } else {
    print_row(out, {"side_a", "side_b", "residual", "quad_err", "identity"});
    print_row(out, {num(r.side_a), num(r.side_b), num(r.residual), num(r.quad_err),
                    holds ? "holds" : "violated"});
  }
  return kExitOk;
}

int cmd_check_gap(const Options& o, std::ostream& out) {
  static const std::map<std::string, GapTheorem> theorems{{"t2", GapTheorem::kT2},
                                                          {"t3", GapTheorem::kT3},
                                                          {"t4", GapTheorem::kT4},
                                                          {"min", GapTheorem::kMinM}};
  const GapTheorem theorem = theorems.at(o.theorem);
  const Expr psi = parse_psi(o);
  const Interval iv = interval(o);
  FracParams fp = frac_params(o);
  if (!fp.p && fp.q > 1.0) fp.p = FracParams::conjugate(fp.q);
  ordered_json reports = ordered_json::array();
  if (!o.json) print_row(out, {"variant", "gap", "bound", "margin", "status"});
  for (Variant v : variants_of(o.variant)) {
    const GapBoundReport r = gap_bound(theorem, psi, iv, fp, v, o.tol);
    if (o.json) {
      ordered_json j{{"theorem", to_string(theorem)},
                     {"variant", to_string(v)},
                     {"gap", r.gap},
                     {"bound", r.bound},
                     {"margin", r.bound - r.gap},
                     {"holds", r.holds},
                     {"quad_err", r.quad_err},
                     {"deriv_u", r.deriv_u},
                     {"deriv_v", r.deriv_v}};
      if (r.components) {
        j["components"] = *r.components;
        j["argmin"] = r.argmin + 1;
      }
      reports.push_back(std::move(j));
    } else {
      print_row(out, {std::string(to_string(v)), num(r.gap), num(r.bound), num(r.bound - r.gap),
                      r.holds ? "holds" : "violated"});
      if (r.components) {
        const auto& c = *r.components;
        out << "  components M1 " << num(c[0]) << "  M2 " << num(c[1]) << "  M3 " << num(c[2])
            << "  (minimum M" << r.argmin + 1 << ")\n";
      }
    }
  }
  if (o.json) out << reports.dump() << '\n';
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const Expr psi = parse_psi(o);
  const Interval domain = interval(o);
  const ConvexityCertificate c =
      o.derivative_q
          ? certify_derivative_power(psi, domain, o.f.s, o.f.alpha, *o.derivative_q, o.grid, o.seed)
          : certify_s_convex(psi, domain, o.f.s, o.f.alpha, o.grid, o.seed);
  if (o.json) {
    ordered_json j{{"certified", c.is_certified},
                   {"worst_violation", c.worst_violation},
                   {"samples", c.samples}};
    if (c.witness) j["witness"] = {{"a", c.witness->a}, {"b", c.witness->b}, {"t", c.witness->t}};
    out << j.dump() << '\n';
  } else {
    out << (c.is_certified ? "certified" : "not certified") << " over " << c.samples
        << " samples; worst violation " << num(c.worst_violation) << '\n';
    if (c.witness) {
      out << "witness a = " << num(c.witness->a) << ", b = " << num(c.witness->b)
          << ", t = " << num(c.witness->t) << '\n';
    }
  }
  return kExitOk;
}

int cmd_means(const Options& o, std::ostream& out) {
  const auto prop = static_cast<Proposition>(o.prop);
  const MeansReport r = check_proposition(prop, o.f.u, o.f.v, o.r, o.q);
  if (o.json) {
    out << ordered_json{{"prop", to_string(prop)},
                        {"lhs", r.lhs},
                        {"bound", r.bound},
                        {"margin", r.bound - r.lhs},
                        {"holds", r.holds}}
               .dump()
        << '\n';
  } else {
    print_row(out, {"proposition", "lhs", "bound", "margin", "status"});
    print_row(out, {std::string(to_string(prop)), num(r.lhs), num(r.bound), num(r.bound - r.lhs),
                    r.holds ? "holds" : "violated"});
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig cfg = load_sweep_config(o.config);
  if (o.threads > 0) cfg.threads = o.threads;
  const SweepResult result = run_sweep(cfg);
  {
    std::ofstream csv(o.out_csv, std::ios::binary);
    if (!csv) throw ConfigError("cannot write '" + o.out_csv + "'");
    write_csv(csv, result);
  }
  if (!o.out_json.empty()) {
    std::ofstream js(o.out_json, std::ios::binary);
    if (!js) throw ConfigError("cannot write '" + o.out_json + "'");
    write_json(js, result);
  }
  std::size_t hard = 0, errors = 0, skipped = 0;
  for (const ViolationRecord& v : result.violations) hard += v.severity == Severity::kHard;
  for (const SweepRow& row : result.rows) {
    errors += row.status == CellStatus::kError;
    skipped += row.status == CellStatus::kSkipped;
  }
  out << result.rows.size() << " rows, " << result.violations.size() << " violations (" << hard
      << " hard), " << skipped << " skipped, " << errors << " errors\n";
  for (const ViolationRecord& v : result.violations) {
    out << to_string(v.severity) << ' ' << to_string(v.check) << " row " << v.row << " margin "
        << num(v.margin) << ": " << v.command() << '\n';
  }
  return result.has_hard_violation() ? kExitHardViolation : kExitOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  const std::vector<AuditRow> rows = reproduce_paper(o.tol);
  if (o.json) {
    ordered_json arr = ordered_json::array();
    for (const AuditRow& r : rows) {
      arr.push_back({{"triple", r.triple},
                     {"member", r.member},
                     {"alpha", r.alpha},
                     {"s", r.s},
                     {"rho", r.rho},
                     {"paper", r.paper},
                     {"as_printed", r.as_printed},
                     {"derivation_consistent", r.derived},
                     {"quadrature", r.quadrature},
                     {"match", r.matches}});
    }
    out << arr.dump() << '\n';
  } else {
    print_audit(out, rows);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Hermite-Hadamard inequalities: evaluation and checking", "fhh"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fhh 0.1.0");
  Options o;
  std::function<int(const Options&, std::ostream&)> handler;
  auto bind = [&handler](CLI::App* cmd, int (*fn)(const Options&, std::ostream&)) {
    cmd->callback([&handler, fn] { handler = fn; });
  };

  auto* eval = app.add_subcommand("eval-integral", "Evaluate a Katugampola integral or operator mean");
  add_psi(eval, o);
  eval->add_option("--side", o.side, "left, right or the operator mean")
      ->check(CLI::IsMember({"left", "right", "mean"}))
      ->capture_default_str();
  add_tolerance(eval, o);
  eval->add_flag("--json", o.json, "Machine-readable output");
  bind(eval, cmd_eval_integral);

  auto* hh = app.add_subcommand("check-hh", "Check the fractional Hermite-Hadamard sandwich");
  add_psi(hh, o);
  add_variant(hh, o);
  add_tolerance(hh, o);
  hh->add_flag("--json", o.json, "Machine-readable output");
  bind(hh, cmd_check_hh);

  auto* lemma = app.add_subcommand("check-lemma", "Check the trapezoid identity");
  add_psi(lemma, o);
  add_tolerance(lemma, o);
  lemma->add_flag("--json", o.json, "Machine-readable output");
  bind(lemma, cmd_check_lemma);

  auto* gap = app.add_subcommand("check-gap", "Check a trapezoid gap bound");
  gap->add_option("--theorem", o.theorem, "Bound to check")
      ->required()
      ->check(CLI::IsMember({"t2", "t3", "t4", "min"}));
  add_psi(gap, o);
  gap->add_option("--q", o.q, "Power-mean exponent, q >= 1")->capture_default_str();
  gap->add_option("--p", o.p, "Hoelder exponent; defaults to the conjugate of q");
  add_variant(gap, o);
  add_tolerance(gap, o);
  gap->add_flag("--json", o.json, "Machine-readable output");
  bind(gap, cmd_check_gap);

  auto* cert = app.add_subcommand("certify", "Sample-certify generalized s-convexity on [u, v]");
  add_psi(cert, o);
  cert->add_option("--grid", o.grid, "Lattice points per axis")->capture_default_str();
  cert->add_option("--seed", o.seed, "Seed for the random samples")->capture_default_str();
  cert->add_option("--derivative-power", o.derivative_q, "Certify |psi'|^q instead of psi");
  cert->add_flag("--json", o.json, "Machine-readable output");
  bind(cert, cmd_certify);

  auto* means = app.add_subcommand("means", "Check a special-means inequality");
  means->add_option("--prop", o.prop, "Proposition 1..4")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  means->add_option("--u", o.f.u, "Left endpoint, > 0")->required();
  means->add_option("--v", o.f.v, "Right endpoint, > u")->required();
  means->add_option("--r", o.r, "Integer power, |r| >= 2")->capture_default_str();
  means->add_option("--q", o.q, "Power-mean exponent, q >= 1")->capture_default_str();
  means->add_flag("--json", o.json, "Machine-readable output");
  bind(means, cmd_means);

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
  sweep->add_option("--config", o.config, "Sweep configuration")->required();
  sweep->add_option("--out-csv", o.out_csv, "CSV output path")->required();
  sweep->add_option("--out-json", o.out_json, "Optional JSON output path");
  sweep->add_option("--threads", o.threads, "Worker threads (0: FHH_THREADS or all cores)")
      ->capture_default_str();
  bind(sweep, cmd_sweep);

  auto* repro = app.add_subcommand("reproduce", "Audit the worked numerical example");
  add_tolerance(repro, o);
  repro->add_flag("--json", o.json, "Machine-readable output");
  bind(repro, cmd_reproduce);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "fhh: " << e.what() << '\n';
    return kExitUsage;
  }

  // Buffered so a failing command leaves stdout untouched.
  std::ostringstream buffer;
  try {
    o.tol.validate();
    const int code = handler(o, buffer);
    out << buffer.str();
    return code;
  } catch (const std::exception& e) {
    err << "fhh: error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fhh::cli
