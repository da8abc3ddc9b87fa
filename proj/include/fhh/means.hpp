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

#ifndef FHH_MEANS_HPP
#define FHH_MEANS_HPP

#include <string_view>

namespace fhh {

double arithmetic_mean(double u, double v);

/// (v - u) / (ln v - ln u); u when u == v.
double logarithmic_mean(double u, double v);

/// [(v^(r+1) - u^(r+1)) / ((v - u)(r + 1))]^(1/r), r integer not in {-1, 0}.
double generalized_log_mean(double u, double v, int r);

enum class Proposition { kP1 = 1, kP2 = 2, kP3 = 3, kP4 = 4 };

std::string_view to_string(Proposition p);

/// One special-means proposition, with lhs and bound assembled as printed:
///
///   P1, P2:  |A(u^r, v^r) - L_r^r(u, v)|    vs  (v-u)|r| / D * A^(1/q)(u^(q(r-1)), v^(q(r-1)))
///   P3, P4:  |A(1/u, 1/v) - L(u, v)|        vs  (v-u) / D * A^(1/q)(u^(-2q), v^(-2q))
///
/// with D = 2^((q-1)/q + 1) for P1/P3 and D = 2 for P2/P4. P3/P4 compare
/// against L itself, not 1/L, and are expected to fail for most (u, v).
struct MeansReport {
  double lhs = 0.0;
  double bound = 0.0;
  Proposition proposition = Proposition::kP1;
  bool holds = false;   // lhs <= bound + 1e-12
};

/// r is ignored for P3/P4. Requires 0 < u < v, q >= 1, |r| >= 2 for P1/P2.
MeansReport check_proposition(Proposition prop, double u, double v, int r, double q);

}  // namespace fhh

#endif  // FHH_MEANS_HPP
