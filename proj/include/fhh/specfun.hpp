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

#ifndef FHH_SPECFUN_HPP
#define FHH_SPECFUN_HPP

#include "fhh/quad.hpp"

namespace fhh {

struct SpecfunAccuracy {
  double rel_tol = 1e-12;
};

/// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms) with
/// reflection below 1/2.
double ln_gamma(double x);

/// Gamma(x) = exp(ln_gamma(x)).
double gamma_fn(double x);

/// Beta(a, b) via ln_gamma, so large arguments do not overflow.
double beta(double a, double b);

/// The rho-deformed beta integral
///
///   int_0^1 rho (1 - x^rho)^(b-1) (x^rho)^(a-1) x^(rho-1) dx
///
/// evaluated by quadrature of the defining integral (not by reduction to
/// beta), absolute error <= 1e-9 with the default settings.
double beta_rho(double a, double b, double rho, const QuadSettings& settings = {});

/// Same, returning the full quadrature result.
QuadResult beta_rho_integral(double a, double b, double rho, const QuadSettings& settings = {});

}  // namespace fhh

#endif  // FHH_SPECFUN_HPP
