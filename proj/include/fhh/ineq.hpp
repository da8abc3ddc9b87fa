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

#ifndef FHH_INEQ_HPP
#define FHH_INEQ_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "fhh/expr.hpp"
#include "fhh/fracint.hpp"
#include "fhh/quad.hpp"

namespace fhh {

/// Slack added to every hold/violate decision on top of the quadrature error.
inline constexpr double kHoldSlack = 1e-9;

/// Which constant set a bound uses: the reference constants verbatim, or
/// constants re-derived from the bounding steps. The two coincide at
/// rho = alpha = 1, apart from the t2 power-mean factor when q > 1.
enum class Variant { kAsPrinted, kDerivationConsistent };

std::string_view to_string(Variant v);

// ---------------------------------------------------------------------------
// Generalized s-convexity:
//   g(t a + (1-t) b) <= t^(alpha s) g(a) + (1-t)^(alpha s) g(b),  t in [0, 1].

struct ConvexityWitness {
  double a;
  double b;
  double t;
};

struct ConvexityCertificate {
  bool is_certified = false;
  /// Largest excess of the left side over the right side, net of rounding
  /// slack. <= 0 exactly when certified.
  double worst_violation = 0.0;
  std::optional<ConvexityWitness> witness;   // set when violated
  std::size_t samples = 0;
};

inline constexpr std::uint64_t kDefaultCertifySeed = 0x5eed2026;

/// Samples a grid^3 lattice of (a, b, t) over domain x domain x [0, 1] plus
/// the same number of uniform random triples. `domain` is the psi-domain.
ConvexityCertificate certify_s_convex(const Expr& psi, Interval domain, double s, double alpha,
                                      int grid, std::uint64_t seed = kDefaultCertifySeed);

ConvexityCertificate certify_s_convex(const std::function<double(double)>& g, Interval domain,
                                      double s, double alpha, int grid,
                                      std::uint64_t seed = kDefaultCertifySeed);

/// Certifies |psi'|^q, the hypothesis of the gap bounds.
ConvexityCertificate certify_derivative_power(const Expr& psi, Interval domain, double s,
                                              double alpha, double q, int grid,
                                              std::uint64_t seed = kDefaultCertifySeed);

// ---------------------------------------------------------------------------
// Fractional Hermite-Hadamard sandwich  lhs <= middle <= rhs.
//
//   lhs    = C_L psi((u^rho + v^rho)/2)
//   middle = operator_mean(psi)
//   rhs    = C_R (psi(u^rho) + psi(v^rho))/2
//
//   as printed:              C_L = 2^(alpha(s-1)),  C_R = 1/(rho(1+s)) + alpha B(alpha, alpha s + 1)
//   derivation consistent:   C_L = 2^(alpha s - 1), C_R = 1/(1+s)      + alpha B(alpha, alpha s + 1)

struct SandwichReport {
  double lhs = 0.0;
  double middle = 0.0;
  double rhs = 0.0;
  Variant variant = Variant::kDerivationConsistent;
  double margin_left = 0.0;    // middle - lhs
  double margin_right = 0.0;   // rhs - middle
  bool holds_left = false;
  bool holds_right = false;
  double quad_err = 0.0;
};

struct SandwichCoefficients {
  double left;
  double right;
};

SandwichCoefficients sandwich_coefficients(const FracParams& fp, Variant variant);

SandwichReport hh_sandwich(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                           const QuadSettings& settings = {});

// ---------------------------------------------------------------------------
// Trapezoid identity:
//
//   side_a = (psi(u^rho) + psi(v^rho))/2 - operator_mean(psi)
//   side_b = (rho (v^rho - u^rho)/2) int_0^1 [(1-t^rho)^alpha - t^(rho alpha)] t^(rho-1)
//                                         psi'(t^rho u^rho + (1-t^rho) v^rho) dt
//
// Both sides are evaluated independently; side_b goes through eval_dual.

struct LemmaReport {
  double side_a = 0.0;
  double side_b = 0.0;
  double residual = 0.0;   // side_a - side_b
  double quad_err = 0.0;
};

LemmaReport lemma_identity(const Expr& psi, Interval iv, double alpha, double rho,
                           const QuadSettings& settings = {});

// ---------------------------------------------------------------------------
// Upper bounds on the trapezoid gap |side_a|.
//
// Every bound has the shape
//
//   lead * first * (coef_u |psi'(u^rho)|^q + coef_v |psi'(v^rho)|^q)^(1/q)
//
// with the factors listed by gap_coefficients().

enum class GapTheorem { kT2, kT3, kT4, kMinM };

std::string_view to_string(GapTheorem t);

struct GapCoefficients {
  double lead_over_width;   // lead / (v^rho - u^rho)
  double first;
  double coef_u;
  double coef_v;
};

/// Coefficients for T2, T3 or T4 (not kMinM). beta_rho(alpha s + 1, alpha + 1)
/// is integrated numerically with `settings`.
GapCoefficients gap_coefficients(GapTheorem theorem, const FracParams& fp, Variant variant,
                                 const QuadSettings& settings = {});

struct GapBoundReport {
  double gap = 0.0;
  double bound = 0.0;
  GapTheorem theorem = GapTheorem::kT2;
  Variant variant = Variant::kDerivationConsistent;
  bool holds = false;
  /// For kMinM: the three candidate bounds, already scaled to the interval.
  std::optional<std::array<double, 3>> components;
  std::size_t argmin = 0;   // index into components (kMinM only)
  double quad_err = 0.0;
  double deriv_u = 0.0;     // psi'(u^rho)
  double deriv_v = 0.0;     // psi'(v^rho)
};

GapBoundReport gap_bound_t2(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                            const QuadSettings& settings = {});
GapBoundReport gap_bound_t3(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                            const QuadSettings& settings = {});
/// Requires fp.p (or q > 1, in which case p is taken as the conjugate).
GapBoundReport gap_bound_t4(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                            const QuadSettings& settings = {});
/// min of the three; ties within 1e-12 resolve to the lowest index.
GapBoundReport min_bound(const Expr& psi, Interval iv, const FracParams& fp, Variant variant,
                         const QuadSettings& settings = {});

GapBoundReport gap_bound(GapTheorem theorem, const Expr& psi, Interval iv, const FracParams& fp,
                         Variant variant, const QuadSettings& settings = {});

}  // namespace fhh

#endif  // FHH_INEQ_HPP
