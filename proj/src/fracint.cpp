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

#include "fhh/fracint.hpp"

#include <cmath>

#include "fhh/errors.hpp"
#include "fhh/specfun.hpp"

namespace fhh {

void FracParams::validate() const {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw DomainError("FracParams: alpha > 0 required");
  if (!std::isfinite(rho) || !(rho > 0.0)) throw DomainError("FracParams: rho > 0 required");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("FracParams: 0 < s <= 1 required");
  if (!std::isfinite(q) || !(q >= 1.0)) throw DomainError("FracParams: q >= 1 required");
  if (p) {
    if (!(*p > 1.0) || !std::isfinite(*p)) throw DomainError("FracParams: p > 1 required");
    if (std::abs(1.0 / *p + 1.0 / q - 1.0) > 1e-12) {
      throw DomainError("FracParams: 1/p + 1/q = 1 required (|1/p + 1/q - 1| <= 1e-12)");
    }
  }
}

double FracParams::conjugate(double q) {
  if (!std::isfinite(q) || !(q > 1.0)) throw DomainError("FracParams: conjugate needs q > 1");
  return q / (q - 1.0);
}

void Interval::validate() const {
  if (!std::isfinite(u) || !std::isfinite(v) || !(u >= 0.0) || !(u < v)) {
    throw DomainError("Interval: 0 <= u < v required");
  }
}

namespace {

void check_order(double alpha, double rho) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw DomainError("katugampola: alpha > 0 required");
  if (!std::isfinite(rho) || !(rho > 0.0)) throw DomainError("katugampola: rho > 0 required");
}

// Logarithms of the kernel differences. The first-order forms take over
// when the exact difference would underflow.

// ln(v^rho - t^rho) where t = v - d.
double log_gap_below(double v, double v_rho, double t, double d, double rho) {
  if (d < 0.5 * v) {
    const double r = d / v;
    const double m = -std::expm1(rho * std::log1p(-r));
    if (m > 1e-280) return std::log(v_rho) + std::log(m);
    return std::log(rho) + std::log(r) + std::log(v_rho);
  }
  return std::log(v_rho - std::pow(t, rho));
}

// ln(t^rho - u^rho) where t = u + e.
double log_gap_above(double u, double u_rho, double t, double e, double rho) {
  if (u == 0.0) return rho * std::log(e);
  if (e < 0.5 * u) {
    const double r = e / u;
    const double m = std::expm1(rho * std::log1p(r));
    if (m > 1e-280) return std::log(u_rho) + std::log(m);
    return std::log(rho) + std::log(r) + std::log(u_rho);
  }
  return std::log(std::pow(t, rho) - u_rho);
}

}  // namespace

QuadResult katugampola(Side side, const Expr& psi, Interval iv, double alpha, double rho,
                       const QuadSettings& settings) {
  iv.validate();
  check_order(alpha, rho);
  const double u_rho = std::pow(iv.u, rho);
  const double v_rho = std::pow(iv.v, rho);
  const double u = iv.u;
  const double v = iv.v;

  auto integrand = [&](const Abscissa& p) {
    const double t = u == 0.0 ? p.from_a : p.x;
    double log_factor = 0.0;   // ln of kernel * t^(rho-1)
    if (alpha != 1.0) {
      const double log_diff = side == Side::kLeft ? log_gap_below(v, v_rho, t, p.to_b, rho)
                                                  : log_gap_above(u, u_rho, t, p.from_a, rho);
      log_factor += (alpha - 1.0) * log_diff;
    }
    if (rho != 1.0) log_factor += (rho - 1.0) * std::log(t);
    const double arg = rho == 1.0 ? t : std::pow(t, rho);
    return std::exp(log_factor) * psi.eval(arg);
  };
  QuadResult r = integrate(Integrand(integrand), u, v, settings);
  const double scale = std::exp((1.0 - alpha) * std::log(rho) - ln_gamma(alpha));
  r.value *= scale;
  r.err_estimate *= scale;
  return r;
}

QuadResult riemann_liouville(Side side, const Expr& psi, Interval iv, double alpha,
                             const QuadSettings& settings) {
  return katugampola(side, psi, iv, alpha, 1.0, settings);
}

QuadResult operator_mean(const Expr& psi, Interval iv, double alpha, double rho,
                         const QuadSettings& settings) {
  const QuadResult left = katugampola(Side::kLeft, psi, iv, alpha, rho, settings);
  const QuadResult right = katugampola(Side::kRight, psi, iv, alpha, rho, settings);
  const double width = std::pow(iv.v, rho) - std::pow(iv.u, rho);
  const double scale =
      std::exp(alpha * std::log(rho) + ln_gamma(alpha + 1.0) - alpha * std::log(width)) / 2.0;
  return {scale * (left.value + right.value), scale * (left.err_estimate + right.err_estimate),
          left.evaluations + right.evaluations};
}

}  // namespace fhh
