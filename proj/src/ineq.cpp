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

#include "fhh/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fhh/errors.hpp"
#include "fhh/specfun.hpp"

namespace fhh {

std::string_view to_string(Variant v) {
  return v == Variant::kAsPrinted ? "as_printed" : "derivation_consistent";
}

std::string_view to_string(GapTheorem t) {
  switch (t) {
    case GapTheorem::kT2: return "t2";
    case GapTheorem::kT3: return "t3";
    case GapTheorem::kT4: return "t4";
    case GapTheorem::kMinM: return "min_m";
  }
  return "?";
}

// ---------------------------------------------------------------------------

ConvexityCertificate certify_s_convex(const std::function<double(double)>& g, Interval domain,
                                      double s, double alpha, int grid, std::uint64_t seed) {
  if (grid < 8) throw DomainError("certify: grid >= 8 required");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("certify: 0 < s <= 1 required");
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw DomainError("certify: alpha > 0 required");
  domain.validate();

  const double exponent = alpha * s;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  ConvexityCertificate cert;
  cert.worst_violation = -std::numeric_limits<double>::infinity();

  auto probe = [&](double a, double ga, double b, double gb, double t) {
    const double gx = g(t * a + (1.0 - t) * b);
    const double wa = std::pow(t, exponent);
    const double wb = std::pow(1.0 - t, exponent);
    const double excess = gx - wa * ga - wb * gb;
    const double slack = 64.0 * kEps * (std::abs(gx) + wa * std::abs(ga) + wb * std::abs(gb));
    const double violation = excess - slack;
    ++cert.samples;
    if (violation > cert.worst_violation) {
      cert.worst_violation = violation;
      if (violation > 0.0) cert.witness = ConvexityWitness{a, b, t};
    }
  };

  const double width = domain.v - domain.u;
  const int n = grid;
  std::vector<double> nodes(n);
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = i == n - 1 ? domain.v : domain.u + width * i / (n - 1);
    values[i] = g(nodes[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        probe(nodes[i], values[i], nodes[j], values[j], static_cast<double>(k) / (n - 1));
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> point(domain.u, domain.v);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  const std::size_t random_count = static_cast<std::size_t>(n) * n * n;
  for (std::size_t r = 0; r < random_count; ++r) {
    const double a = point(rng);
    const double b = point(rng);
    const double t = weight(rng);
    probe(a, g(a), b, g(b), t);
  }

  cert.is_certified = cert.worst_violation <= 0.0;
  if (cert.is_certified) cert.witness.reset();
  return cert;
}

ConvexityCertificate certify_s_convex(const Expr& psi, Interval domain, double s, double alpha,
                                      int grid, std::uint64_t seed) {
  return certify_s_convex([&psi](double x) { return psi.eval(x); }, domain, s, alpha, grid, seed);
}

ConvexityCertificate certify_derivative_power(const Expr& psi, Interval domain, double s,
                                              double alpha, double q, int grid,
                                              std::uint64_t seed) {
  if (!(q >= 1.0)) throw DomainError("certify: q >= 1 required");
  auto g = [&psi, q](double x) { return std::pow(std::abs(psi.eval_dual(x).deriv), q); };
  return certify_s_convex(g, domain, s, alpha, grid, seed);
}

// ---------------------------------------------------------------------------

SandwichCoefficients sandwich_coefficients(const FracParams& fp, Variant variant) {
  fp.validate();
  const double a = fp.alpha;
  const double tail = a * beta(a, a * fp.s + 1.0);
  if (variant == Variant::kAsPrinted) {
    return {std::exp2(a * (fp.s - 1.0)), 1.0 / (fp.rho * (1.0 + fp.s)) + tail};
  }
  return {std::exp2(a * fp.s - 1.0), 1.0 / (1.0 + fp.s) + tail};
}

SandwichReport hh_sandwich(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                           const QuadSettings& settings) {
  iv.validate();
  const SandwichCoefficients c = sandwich_coefficients(fp, variant);
  const double u_rho = std::pow(iv.u, fp.rho);
  const double v_rho = std::pow(iv.v, fp.rho);
  const QuadResult middle = operator_mean(psi, iv, fp.alpha, fp.rho, settings);

  SandwichReport r;
  r.variant = variant;
  r.lhs = c.left * psi.eval(0.5 * (u_rho + v_rho));
  r.middle = middle.value;
  r.rhs = c.right * 0.5 * (psi.eval(u_rho) + psi.eval(v_rho));
  r.margin_left = r.middle - r.lhs;
  r.margin_right = r.rhs - r.middle;
  r.quad_err = middle.err_estimate;
  r.holds_left = r.margin_left >= -(r.quad_err + kHoldSlack);
  r.holds_right = r.margin_right >= -(r.quad_err + kHoldSlack);
  return r;
}

// ---------------------------------------------------------------------------

LemmaReport lemma_identity(const Expr& psi, Interval iv, double alpha, double rho,
                           const QuadSettings& settings) {
  iv.validate();
  if (!(alpha > 0.0) || !(rho > 0.0)) throw DomainError("lemma: alpha > 0 and rho > 0 required");
  const double u_rho = std::pow(iv.u, rho);
  const double v_rho = std::pow(iv.v, rho);
  const double width = v_rho - u_rho;

  const QuadResult middle = operator_mean(psi, iv, alpha, rho, settings);
  const double side_a = 0.5 * (psi.eval(u_rho) + psi.eval(v_rho)) - middle.value;

  auto integrand = [&](const Abscissa& p) {
    const double t = p.from_a;
    const double t_rho = std::pow(t, rho);
    const double one_minus =
        p.to_b < 0.5 ? -std::expm1(rho * std::log1p(-p.to_b)) : 1.0 - t_rho;
    // t^rho u^rho + (1 - t^rho) v^rho, anchored at the nearer end.
    const double arg = t_rho < 0.5 ? v_rho - t_rho * width : u_rho + one_minus * width;
    const double kernel = std::pow(one_minus, alpha) - std::pow(t_rho, alpha);
    const double weight = rho == 1.0 ? 1.0 : std::pow(t, rho - 1.0);
    return kernel * weight * psi.eval_dual(arg).deriv;
  };
  const QuadResult tail = integrate(Integrand(integrand), 0.0, 1.0, settings);
  const double scale = 0.5 * rho * width;

  LemmaReport r;
  r.side_a = side_a;
  r.side_b = scale * tail.value;
  r.residual = r.side_a - r.side_b;
  r.quad_err = middle.err_estimate + std::abs(scale) * tail.err_estimate;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

double conjugate_of(const FracParams& fp) {
  if (fp.p) return *fp.p;
  return FracParams::conjugate(fp.q);
}

// (1/(p(rho-1)+1))^(1/p); +inf when the defining integral of t^(p(rho-1)) diverges.
double hoelder_first_factor(double p, double rho) {
  const double denom = p * (rho - 1.0) + 1.0;
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(1.0 / denom, 1.0 / p);
}

// M1, M2, M3 with the reference constants.
GapCoefficients printed_m(int index, const FracParams& fp, double beta_r) {
  const double a = fp.alpha, s = fp.s, rho = fp.rho, q = fp.q;
  const double outer = (q - 1.0) / q;
  switch (index) {
    case 0: {
      const double c = beta_r / rho + 1.0 / (((s + 1.0) * a + 1.0) * rho);
      return {rho / 2.0, std::pow(1.0 / (rho * (a + 1.0)), outer), c, c};
    }
    case 1: {
      const double c = beta_r / rho + 1.0 / (rho * (a * (s + 1.0) + 1.0));
      return {0.5, std::pow(1.0 / rho, outer), c, c};
    }
    default: {
      const double c = beta_r / rho + 1.0 / ((a * (s + 1.0) + 1.0) * rho);
      return {rho / 2.0, hoelder_first_factor(conjugate_of(fp), rho), c, c};
    }
  }
}

struct GapCore {
  double gap;
  double quad_err;
  double deriv_u;
  double deriv_v;
  double width;
};

GapCore gap_core(const Expr& psi, Interval iv, const FracParams& fp,
                 const QuadSettings& settings) {
  iv.validate();
  fp.validate();
  const double u_rho = std::pow(iv.u, fp.rho);
  const double v_rho = std::pow(iv.v, fp.rho);
  const QuadResult middle = operator_mean(psi, iv, fp.alpha, fp.rho, settings);
  const double side_a = 0.5 * (psi.eval(u_rho) + psi.eval(v_rho)) - middle.value;
  return {std::abs(side_a), middle.err_estimate, psi.eval_dual(u_rho).deriv,
          psi.eval_dual(v_rho).deriv, v_rho - u_rho};
}

double assemble(const GapCoefficients& c, const GapCore& core, double q) {
  const double term = c.coef_u * std::pow(std::abs(core.deriv_u), q) +
                      c.coef_v * std::pow(std::abs(core.deriv_v), q);
  if (term == 0.0) return 0.0;
  return c.lead_over_width * core.width * c.first * std::pow(term, 1.0 / q);
}

GapBoundReport finish(GapTheorem theorem, Variant variant, const GapCore& core, double bound) {
  GapBoundReport r;
  r.theorem = theorem;
  r.variant = variant;
  r.gap = core.gap;
  r.bound = bound;
  r.quad_err = core.quad_err;
  r.deriv_u = core.deriv_u;
  r.deriv_v = core.deriv_v;
  r.holds = r.gap <= r.bound + r.quad_err + kHoldSlack;
  return r;
}

}  // namespace

GapCoefficients gap_coefficients(GapTheorem theorem, const FracParams& fp, Variant variant,
                                 const QuadSettings& settings) {
  fp.validate();
  if (theorem == GapTheorem::kMinM) {
    throw DomainError("gap_coefficients: min_m has no single coefficient set");
  }
  const double a = fp.alpha, s = fp.s, rho = fp.rho, q = fp.q;
  const double outer = (q - 1.0) / q;
  const double beta_r = beta_rho(a * s + 1.0, a + 1.0, rho, settings);

  if (variant == Variant::kAsPrinted) {
    switch (theorem) {
      case GapTheorem::kT2: {
        const double c = beta_r / rho + 1.0 / (a * (s + 1.0) * rho + 1.0);
        return {rho / 2.0, std::pow(1.0 / ((a + 1.0) * rho), outer), c, c};
      }
      case GapTheorem::kT3: {
        const double c = beta_r / rho + 1.0 / ((a * (s + 1.0) + 1.0) * rho);
        return {0.5, std::pow(1.0 / rho, outer), c, c};
      }
      default: {
        const double c = beta_r / rho + 1.0 / (rho * (a * s + a + 1.0));
        return {rho / 2.0, hoelder_first_factor(conjugate_of(fp), rho), c, c};
      }
    }
  }

  // Power mean with |k| <= (1-t^rho)^alpha + t^(rho alpha): int |k| t^(rho-1) <= 2/(rho(alpha+1)),
  // and int (sum) t^(rho-1) [t^(rho alpha s) A + (1-t^rho)^(alpha s) B] = c (A + B).
  const double c = (beta_r + 1.0 / (a * (s + 1.0) + 1.0)) / rho;
  switch (theorem) {
    case GapTheorem::kT2:
      return {rho / 2.0, std::pow(2.0 / (rho * (a + 1.0)), outer), c, c};
    case GapTheorem::kT3:
      return {rho / 2.0, std::pow(1.0 / rho, outer), c, c};
    default: {
      // Hoelder leaves no t^(rho-1) weight in the second factor; with w = t^rho
      // every term is a beta integral against w^(1/rho - 1).
      const double r = 1.0 / rho;
      const double coef_u = (beta(a * s + r, a + 1.0) + 1.0 / (a + a * s + r)) / rho;
      const double coef_v = (beta(r, a + a * s + 1.0) + beta(a + r, a * s + 1.0)) / rho;
      return {rho / 2.0, hoelder_first_factor(conjugate_of(fp), rho), coef_u, coef_v};
    }
  }
}

GapBoundReport gap_bound_t2(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                            const QuadSettings& settings) {
  const GapCore core = gap_core(psi, iv, fp, settings);
  const GapCoefficients c = gap_coefficients(GapTheorem::kT2, fp, variant, settings);
  return finish(GapTheorem::kT2, variant, core, assemble(c, core, fp.q));
}

GapBoundReport gap_bound_t3(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                            const QuadSettings& settings) {
  const GapCore core = gap_core(psi, iv, fp, settings);
  const GapCoefficients c = gap_coefficients(GapTheorem::kT3, fp, variant, settings);
  return finish(GapTheorem::kT3, variant, core, assemble(c, core, fp.q));
}

GapBoundReport gap_bound_t4(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                            const QuadSettings& settings) {
  if (!fp.p && !(fp.q > 1.0)) throw DomainError("gap_bound_t4: q > 1 (or an explicit p) required");
  const GapCore core = gap_core(psi, iv, fp, settings);
  const GapCoefficients c = gap_coefficients(GapTheorem::kT4, fp, variant, settings);
  return finish(GapTheorem::kT4, variant, core, assemble(c, core, fp.q));
}

GapBoundReport min_bound(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                         const QuadSettings& settings) {
  if (!(fp.q > 1.0)) throw DomainError("min_bound: q > 1 required");
  const GapCore core = gap_core(psi, iv, fp, settings);
  std::array<double, 3> parts{};
  if (variant == Variant::kAsPrinted) {
    const double beta_r = beta_rho(fp.alpha * fp.s + 1.0, fp.alpha + 1.0, fp.rho, settings);
    for (int i = 0; i < 3; ++i) parts[i] = assemble(printed_m(i, fp, beta_r), core, fp.q);
  } else {
    const GapTheorem order[3] = {GapTheorem::kT2, GapTheorem::kT3, GapTheorem::kT4};
    for (int i = 0; i < 3; ++i) {
      parts[i] = assemble(gap_coefficients(order[i], fp, variant, settings), core, fp.q);
    }
  }
  const double smallest = std::min({parts[0], parts[1], parts[2]});
  std::size_t argmin = 0;
  while (parts[argmin] > smallest + 1e-12) ++argmin;

  GapBoundReport r = finish(GapTheorem::kMinM, variant, core, smallest);
  r.components = parts;
  r.argmin = argmin;
  return r;
}

GapBoundReport gap_bound(GapTheorem theorem, const Expr& psi, Interval iv, const FracParams& fp,
                         Variant variant, const QuadSettings& settings) {
  switch (theorem) {
    case GapTheorem::kT2: return gap_bound_t2(psi, iv, fp, variant, settings);
    case GapTheorem::kT3: return gap_bound_t3(psi, iv, fp, variant, settings);
    case GapTheorem::kT4: return gap_bound_t4(psi, iv, fp, variant, settings);
    case GapTheorem::kMinM: return min_bound(psi, iv, fp, variant, settings);
  }
  throw DomainError("gap_bound: unknown theorem");
}

}  // namespace fhh
