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

#include "fhh/means.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fhh/errors.hpp"

namespace fhh {

namespace {

void require_positive_pair(double u, double v, const char* op) {
  if (!std::isfinite(u) || !std::isfinite(v) || !(u > 0.0) || !(v > 0.0)) {
    throw DomainError(std::string(op) + ": u > 0 and v > 0 required");
  }
}

}  // namespace

double arithmetic_mean(double u, double v) {
  require_positive_pair(u, v, "arithmetic_mean");
  return 0.5 * (u + v);
}

double logarithmic_mean(double u, double v) {
  require_positive_pair(u, v, "logarithmic_mean");
  if (u == v) return u;
  return (v - u) / (std::log(v) - std::log(u));
}

double generalized_log_mean(double u, double v, int r) {
  require_positive_pair(u, v, "generalized_log_mean");
  if (r == 0 || r == -1) throw DomainError("generalized_log_mean: r not in {-1, 0} required");
  if (u == v) return u;
  const double k = r + 1.0;
  const double ratio = (std::pow(v, k) - std::pow(u, k)) / ((v - u) * k);
  return std::pow(ratio, 1.0 / r);
}

std::string_view to_string(Proposition p) {
  switch (p) {
    case Proposition::kP1: return "P1";
    case Proposition::kP2: return "P2";
    case Proposition::kP3: return "P3";
    case Proposition::kP4: return "P4";
  }
  return "?";
}

MeansReport check_proposition(Proposition prop, double u, double v, int r, double q) {
  require_positive_pair(u, v, "check_proposition");
  if (!(u < v)) throw DomainError("check_proposition: 0 < u < v required");
  if (!std::isfinite(q) || !(q >= 1.0)) throw DomainError("check_proposition: q >= 1 required");

  const bool power_family = prop == Proposition::kP1 || prop == Proposition::kP2;
  const bool sharp_denominator = prop == Proposition::kP1 || prop == Proposition::kP3;
  const double denom = sharp_denominator ? std::pow(2.0, (q - 1.0) / q + 1.0) : 2.0;

  MeansReport rep;
  rep.proposition = prop;
  if (power_family) {
    if (std::abs(r) < 2) throw DomainError("check_proposition: |r| >= 2 required for P1/P2");
    const double lr = generalized_log_mean(u, v, r);
    rep.lhs = std::abs(arithmetic_mean(std::pow(u, r), std::pow(v, r)) - std::pow(lr, r));
    const double e = q * (r - 1.0);
    const double a = arithmetic_mean(std::pow(std::abs(u), e), std::pow(std::abs(v), e));
    rep.bound = (v - u) * std::abs(r) / denom * std::pow(a, 1.0 / q);
  } else {
    rep.lhs = std::abs(arithmetic_mean(1.0 / u, 1.0 / v) - logarithmic_mean(u, v));
    const double a =
        arithmetic_mean(std::pow(std::abs(u), -2.0 * q), std::pow(std::abs(v), -2.0 * q));
    rep.bound = (v - u) / denom * std::pow(a, 1.0 / q);
  }
  rep.holds = rep.lhs <= rep.bound + 1e-12;
  return rep;
}

}  // namespace fhh
