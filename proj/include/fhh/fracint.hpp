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

#ifndef FHH_FRACINT_HPP
#define FHH_FRACINT_HPP

#include <optional>

#include "fhh/expr.hpp"
#include "fhh/quad.hpp"

namespace fhh {

/// Parameters shared by the sandwich and the gap bounds.
struct FracParams {
  double alpha = 1.0;   // fractional order, > 0
  double rho = 1.0;     // deformation, > 0
  double s = 1.0;       // convexity index, (0, 1]
  double q = 1.0;       // power-mean exponent, >= 1
  std::optional<double> p;   // Hoelder conjugate of q, only for the Hoelder bound

  void validate() const;

  /// p with 1/p + 1/q = 1; requires q > 1.
  static double conjugate(double q);
};

/// [u, v] with 0 <= u < v. The operators integrate over [u, v] and sample
/// psi on [u^rho, v^rho].
struct Interval {
  double u = 0.0;
  double v = 1.0;

  void validate() const;
};

enum class Side { kLeft, kRight };

/// Katugampola fractional integral with psi sampled at t^rho:
///
///   left  = rho^(1-alpha)/Gamma(alpha) int_u^v (v^rho - t^rho)^(alpha-1) t^(rho-1) psi(t^rho) dt
///   right = rho^(1-alpha)/Gamma(alpha) int_u^v (t^rho - u^rho)^(alpha-1) t^(rho-1) psi(t^rho) dt
///
/// The kernel difference is formed from the node's endpoint distance, so
/// alpha < 1 singularities are integrated without cancellation.
QuadResult katugampola(Side side, const Expr& psi, Interval iv, double alpha, double rho,
                       const QuadSettings& settings = {});

/// katugampola with rho = 1.
QuadResult riemann_liouville(Side side, const Expr& psi, Interval iv, double alpha,
                             const QuadSettings& settings = {});

/// rho^alpha Gamma(alpha+1) / (2 (v^rho - u^rho)^alpha) * (left + right):
/// the fractional average of psi over [u^rho, v^rho].
QuadResult operator_mean(const Expr& psi, Interval iv, double alpha, double rho,
                         const QuadSettings& settings = {});

}  // namespace fhh

#endif  // FHH_FRACINT_HPP
