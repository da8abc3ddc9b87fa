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

#ifndef FHH_QUAD_HPP
#define FHH_QUAD_HPP

#include <concepts>
#include <cstddef>
#include <functional>
#include <utility>

namespace fhh {

struct QuadSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_levels = 10;               // tanh-sinh refinement depth, in [3, 12]
  int fallback_subdivisions = 400;   // interval budget for the Gauss-Kronrod fallback

  /// Throws DomainError when the invariants do not hold.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;   // absolute
  std::size_t evaluations = 0;
};

/// A quadrature node together with its distances to both endpoints.
///
/// Near an endpoint `x` itself carries no information about how close it is
/// (b - x rounds to a few ulps of b); `from_a` and `to_b` are computed from
/// the node offset and stay accurate down to ~1e-300. Kernels with an
/// endpoint singularity should be written in terms of them.
struct Abscissa {
  double x;
  double from_a;   // x - a
  double to_b;     // b - x
};

using Integrand = std::function<double(const Abscissa&)>;

/// Integrates f over (a, b). Tanh-sinh with level doubling; the error
/// estimate is |I_k - I_{k-1}|. When the ladder stalls at max_levels an
/// adaptive 15-point Gauss-Kronrod pass on dyadic subdivisions is tried.
/// The endpoints themselves are never sampled.
///
/// Throws ConvergenceError (with the best estimate) if neither rule meets
/// max(abs_tol, rel_tol * |value|), IntegrandError if f returns a
/// non-finite value, DomainError for a >= b or bad settings.
QuadResult integrate(const Integrand& f, double a, double b, const QuadSettings& settings = {});

template <class F>
  requires std::invocable<F&, double> && (!std::invocable<F&, const Abscissa&>)
QuadResult integrate(F&& f, double a, double b, const QuadSettings& settings = {}) {
  return integrate(Integrand([&f](const Abscissa& p) { return static_cast<double>(f(p.x)); }),
                   a, b, settings);
}

}  // namespace fhh

#endif  // FHH_QUAD_HPP
