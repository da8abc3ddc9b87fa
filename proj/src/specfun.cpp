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

#include "fhh/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fhh/errors.hpp"

namespace fhh {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

void require_positive(double x, const char* name, const char* op) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(op) + ": " + name + " must be finite and > 0");
  }
}

// Valid for x >= 1/2.
double lanczos_ln_gamma(double x) {
  const double z = x - 1.0;
  double series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double ln_gamma(double x) {
  require_positive(x, "x", "ln_gamma");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x); sin(pi x) > 0 on (0, 1/2).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_ln_gamma(1.0 - x);
  }
  return lanczos_ln_gamma(x);
}

double gamma_fn(double x) { return std::exp(ln_gamma(x)); }

double beta(double a, double b) {
  require_positive(a, "a", "beta");
  require_positive(b, "b", "beta");
  return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

QuadResult beta_rho_integral(double a, double b, double rho, const QuadSettings& settings) {
  require_positive(a, "a", "beta_rho");
  require_positive(b, "b", "beta_rho");
  require_positive(rho, "rho", "beta_rho");
  // (x^rho)^(a-1) x^(rho-1) folded into a single power of x.
  const double x_power = rho * a - 1.0;
  auto integrand = [=](const Abscissa& p) {
    const double x = p.from_a;
    const double one_minus = p.to_b < 0.5 ? -std::expm1(rho * std::log1p(-p.to_b))
                                          : 1.0 - std::pow(x, rho);
    return rho * std::pow(one_minus, b - 1.0) * std::pow(x, x_power);
  };
  return integrate(Integrand(integrand), 0.0, 1.0, settings);
}

double beta_rho(double a, double b, double rho, const QuadSettings& settings) {
  return beta_rho_integral(a, b, rho, settings).value;
}

}  // namespace fhh
