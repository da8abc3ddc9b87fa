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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fhh/errors.hpp"
#include "fhh/means.hpp"
#include "support.hpp"

using namespace fhh;

TEST_CASE("arithmetic mean") {
  CHECK(arithmetic_mean(1, 3) == 2.0);
  CHECK(arithmetic_mean(2, 8) == 5.0);
  CHECK(arithmetic_mean(1.7, 1.7) == 1.7);
  CHECK_THROWS_AS(arithmetic_mean(0, 1), DomainError);
  CHECK_THROWS_AS(arithmetic_mean(1, -1), DomainError);
}

TEST_CASE("logarithmic mean") {
  CHECK(logarithmic_mean(1, std::numbers::e) == doctest::Approx(std::numbers::e - 1).epsilon(1e-14));
  CHECK(logarithmic_mean(2.5, 2.5) == 2.5);
  CHECK(logarithmic_mean(1, 4) == doctest::Approx(3.0 / std::log(4.0)).epsilon(1e-14));
  CHECK(logarithmic_mean(1, 4) == doctest::Approx(2.16404).epsilon(1e-5));
  CHECK_THROWS_AS(logarithmic_mean(0, 1), DomainError);
}

TEST_CASE("generalized logarithmic mean") {
  CHECK(generalized_log_mean(1, 3, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(generalized_log_mean(1, 2, 2) == doctest::Approx(std::sqrt(7.0 / 3.0)).epsilon(1e-14));
  CHECK(generalized_log_mean(1, 2, 2) == doctest::Approx(1.52753).epsilon(1e-5));
  CHECK(generalized_log_mean(1, 2, -2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(generalized_log_mean(3, 3, 4) == 3.0);
  CHECK_THROWS_AS(generalized_log_mean(1, 2, 0), DomainError);
  CHECK_THROWS_AS(generalized_log_mean(1, 2, -1), DomainError);
  CHECK_THROWS_AS(generalized_log_mean(-1, 2, 2), DomainError);
}

TEST_CASE("L_1 equals A") {
  testing::Gen gen(101);
  for (int i = 0; i < 1000; ++i) {
    const double u = gen.uniform(1e-3, 10.0);
    const double v = gen.uniform(1e-3, 10.0);
    const double a = arithmetic_mean(u, v);
    CHECK(std::abs(generalized_log_mean(u, v, 1) - a) <= 1e-13 * a);
  }
}

TEST_CASE("mean ordering") {
  testing::Gen gen(102);
  for (int i = 0; i < 1000; ++i) {
    const double u = gen.uniform(0.01, 10.0);
    const double v = u + gen.uniform(1e-3, 10.0);
    const double l = logarithmic_mean(u, v);
    const double a = arithmetic_mean(u, v);
    CHECK(u < l);
    CHECK(l < a);
    CHECK(a < v);
  }
}

TEST_CASE("proposition examples") {
  const MeansReport p2 = check_proposition(Proposition::kP2, 1, 2, 2, 1);
  CHECK(p2.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(p2.bound == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(p2.holds);

  const MeansReport p3 = check_proposition(Proposition::kP3, 1, 2, 2, 1);
  CHECK(p3.lhs == doctest::Approx(std::abs(0.75 - 1.0 / std::log(2.0))).epsilon(1e-13));
  // As printed: (v - u) / 2^1 * A(1^-2, 2^-2) = 0.5 * 0.625.
  CHECK(p3.bound == doctest::Approx(0.3125).epsilon(1e-14));
  // With L itself on the left this fails; with 1/L it would hold.
  CHECK_FALSE(p3.holds);
  CHECK(std::abs(0.75 - std::log(2.0)) <= p3.bound);
  CHECK(p3.proposition == Proposition::kP3);
}

TEST_CASE("both sides vanish as v approaches u") {
  for (Proposition p : {Proposition::kP1, Proposition::kP2, Proposition::kP3, Proposition::kP4}) {
    const double u = 1.0;
    const double v = u * (1.0 + 1e-6);
    const MeansReport r = check_proposition(p, u, v, 2, 2.0);
    INFO(to_string(p));
    CHECK(r.lhs <= 1e-5);
    CHECK(r.bound <= 1e-5);
  }
  // P1/P2 close to equality at this scale; the hold flag is expected.
  CHECK(check_proposition(Proposition::kP1, 1.0, 1.0 + 1e-6, 2, 2.0).holds);
  CHECK(check_proposition(Proposition::kP2, 1.0, 1.0 + 1e-6, 2, 2.0).holds);
}

TEST_CASE("P1 bound never exceeds P2 bound") {
  testing::Gen gen(103);
  for (int i = 0; i < 1000; ++i) {
    const double u = gen.uniform(0.01, 10.0);
    const double v = u + gen.uniform(1e-3, 10.0);
    int r = gen.integer(2, 4) * (gen.integer(0, 1) ? 1 : -1);
    const double q = gen.uniform(1.0, 4.0);
    CHECK(check_proposition(Proposition::kP1, u, v, r, q).bound <=
          check_proposition(Proposition::kP2, u, v, r, q).bound);
    CHECK(check_proposition(Proposition::kP3, u, v, r, q).bound <=
          check_proposition(Proposition::kP4, u, v, r, q).bound);
  }
}

TEST_CASE("P1 and P2 hold across the grid") {
  const double pts[] = {0.1, 0.5, 1.0, 2.0, 3.7, 5.0, 8.0, 10.0};
  for (double u : pts)
    for (double v : pts) {
      if (!(u < v)) continue;
      for (int r : {-4, -3, -2, 2, 3, 4})
        for (double q : {1.0, 1.5, 2.0}) {
          INFO("u " << u << " v " << v << " r " << r << " q " << q);
          CHECK(check_proposition(Proposition::kP1, u, v, r, q).holds);
          CHECK(check_proposition(Proposition::kP2, u, v, r, q).holds);
        }
    }
}

TEST_CASE("hold flag is the bound comparison") {
  testing::Gen gen(104);
  for (int i = 0; i < 500; ++i) {
    const double u = gen.uniform(0.01, 10.0);
    const double v = u + gen.uniform(1e-3, 10.0);
    const auto p = static_cast<Proposition>(gen.integer(1, 4));
    const MeansReport r = check_proposition(p, u, v, 2, gen.uniform(1.0, 3.0));
    CHECK(r.bound >= 0.0);
    CHECK(r.holds == (r.lhs <= r.bound + 1e-12));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(check_proposition(Proposition::kP1, 2, 1, 2, 1), DomainError);
  CHECK_THROWS_AS(check_proposition(Proposition::kP1, 1, 2, 1, 1), DomainError);
  CHECK_THROWS_AS(check_proposition(Proposition::kP1, 1, 2, 2, 0.5), DomainError);
  CHECK_THROWS_AS(check_proposition(Proposition::kP3, 0, 2, 2, 1), DomainError);
  CHECK_NOTHROW(check_proposition(Proposition::kP3, 1, 2, 1, 1));   // r unused
}
