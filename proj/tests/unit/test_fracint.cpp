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

#include "doctest.h"
#include "fhh/errors.hpp"
#include "fhh/expr.hpp"
#include "fhh/fracint.hpp"
#include "fhh/specfun.hpp"
#include "support.hpp"

using namespace fhh;

TEST_CASE("parameter validation") {
  FracParams fp{1.0, 1.0, 1.0, 1.0, std::nullopt};
  CHECK_NOTHROW(fp.validate());
  CHECK_THROWS_AS((FracParams{0.0, 1.0, 1.0, 1.0, std::nullopt}.validate()), DomainError);
  CHECK_THROWS_AS((FracParams{1.0, -1.0, 1.0, 1.0, std::nullopt}.validate()), DomainError);
  CHECK_THROWS_AS((FracParams{1.0, 1.0, 0.0, 1.0, std::nullopt}.validate()), DomainError);
  CHECK_THROWS_AS((FracParams{1.0, 1.0, 1.5, 1.0, std::nullopt}.validate()), DomainError);
  CHECK_THROWS_AS((FracParams{1.0, 1.0, 1.0, 0.5, std::nullopt}.validate()), DomainError);
  CHECK_NOTHROW((FracParams{1.0, 1.0, 1.0, 2.0, 2.0}.validate()));
  CHECK_THROWS_AS((FracParams{1.0, 1.0, 1.0, 2.0, 3.0}.validate()), DomainError);
  CHECK(FracParams::conjugate(3.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(FracParams::conjugate(1.0), DomainError);

  CHECK_NOTHROW((Interval{0.0, 1.0}.validate()));
  CHECK_THROWS_AS((Interval{1.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((Interval{-1.0, 1.0}.validate()), DomainError);
}

TEST_CASE("constant psi closed form") {
  const Expr one = parse("1");
  CHECK(std::abs(katugampola(Side::kLeft, one, {0, 1}, 2.0, 1.0).value - 0.5) <= 1e-12);
  for (double alpha : {0.5, 1.0, 2.5})
    for (double rho : {0.5, 1.0, 2.0})
      for (Side side : {Side::kLeft, Side::kRight}) {
        const Interval iv{0.5, 2.0};
        const double c = 3.0;
        const double want = c * std::pow(std::pow(iv.v, rho) - std::pow(iv.u, rho), alpha) /
                            (std::pow(rho, alpha) * gamma_fn(alpha + 1.0));
        const double got = katugampola(side, parse("3"), iv, alpha, rho).value;
        INFO("alpha " << alpha << " rho " << rho);
        CHECK(std::abs(got - want) <= 1e-9 * want);
      }
}

TEST_CASE("Riemann-Liouville monomial rule") {
  const double rl = katugampola(Side::kLeft, parse("x^2"), {0, 1}, 0.5, 1.0).value;
  CHECK(std::abs(rl - 2.0 / gamma_fn(3.5)) <= 1e-8);
  CHECK(rl == doctest::Approx(0.60179).epsilon(1e-5));
  for (int c = 0; c <= 3; ++c)
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
      const Expr psi = Expr::power(c);
      const double want = std::exp(std::lgamma(c + 1.0) - std::lgamma(c + 1.0 + alpha));
      INFO("c " << c << " alpha " << alpha);
      CHECK(std::abs(katugampola(Side::kLeft, psi, {0, 1}, alpha, 1.0).value - want) <= 1e-8);
      CHECK(std::abs(riemann_liouville(Side::kLeft, psi, {0, 1}, alpha).value - want) <= 1e-8);
    }
}

TEST_CASE("hand integrals") {
  const Expr root = parse("sqrt(x)");
  CHECK(std::abs(katugampola(Side::kLeft, root, {0, 1}, 1.0, 2.0).value - 1.0 / 3.0) <= 1e-10);
  CHECK(std::abs(katugampola(Side::kRight, root, {0, 1}, 1.0, 2.0).value - 1.0 / 3.0) <= 1e-10);
  const Expr id = parse("x");
  CHECK(std::abs(riemann_liouville(Side::kLeft, id, {0, 1}, 2.0).value - 1.0 / 6.0) <= 1e-10);
  CHECK(std::abs(riemann_liouville(Side::kRight, id, {0, 1}, 2.0).value - 1.0 / 3.0) <= 1e-10);
  CHECK(std::abs(riemann_liouville(Side::kLeft, parse("1"), {1.5, 4}, 1.0).value - 2.5) <= 1e-10);
}

TEST_CASE("alpha = rho = 1 is plain integration") {
  testing::Gen gen(3);
  for (int i = 0; i < 20; ++i) {
    const auto c = gen.polynomial(gen.integer(0, 5));
    Expr psi = Expr::literal(c[0]);
    for (std::size_t k = 1; k < c.size(); ++k) {
      psi = Expr::binary(NodeKind::kAdd, psi,
                         Expr::binary(NodeKind::kMul, Expr::literal(c[k]), Expr::power(k)));
    }
    const double u = gen.uniform(0.0, 2.0);
    const double v = u + gen.uniform(0.1, 2.0);
    const double want = testing::poly_integral(c, u, v);
    CHECK(std::abs(katugampola(Side::kLeft, psi, {u, v}, 1.0, 1.0).value - want) <= 1e-9);
    CHECK(std::abs(katugampola(Side::kRight, psi, {u, v}, 1.0, 1.0).value - want) <= 1e-9);
  }
}

TEST_CASE("linearity in psi") {
  testing::Gen gen(4);
  const QuadSettings tol;
  for (int i = 0; i < 20; ++i) {
    const double a = gen.uniform(-2.0, 2.0);
    const double b = gen.uniform(-2.0, 2.0);
    const double alpha = gen.uniform(0.3, 3.0);
    const double rho = gen.uniform(0.3, 3.0);
    const Interval iv{gen.uniform(0.0, 1.0), 0.0};
    const Interval iv2{iv.u, iv.u + gen.uniform(0.2, 2.0)};
    const Expr f1 = parse("exp(x)");
    const Expr f2 = parse("x^2");
    const Expr mix = Expr::binary(
        NodeKind::kAdd, Expr::binary(NodeKind::kMul, Expr::literal(a), f1),
        Expr::binary(NodeKind::kMul, Expr::literal(b), f2));
    for (Side side : {Side::kLeft, Side::kRight}) {
      const QuadResult m = katugampola(side, mix, iv2, alpha, rho);
      const QuadResult r1 = katugampola(side, f1, iv2, alpha, rho);
      const QuadResult r2 = katugampola(side, f2, iv2, alpha, rho);
      const double scale = std::max({std::abs(m.value), std::abs(a * r1.value), std::abs(b * r2.value), 1.0});
      INFO("alpha " << alpha << " rho " << rho);
      CHECK(std::abs(m.value - (a * r1.value + b * r2.value)) <=
            2.0 * std::max(tol.abs_tol, tol.rel_tol * scale) + m.err_estimate +
                std::abs(a) * r1.err_estimate + std::abs(b) * r2.err_estimate);
    }
  }
}

TEST_CASE("positivity") {
  testing::Gen gen(5);
  for (int i = 0; i < 30; ++i) {
    const double alpha = gen.uniform(0.2, 3.0);
    const double rho = gen.uniform(0.2, 3.0);
    const double u = gen.uniform(0.0, 2.0);
    const Interval iv{u, u + gen.uniform(0.05, 2.0)};
    for (Side side : {Side::kLeft, Side::kRight}) {
      const QuadResult r = katugampola(side, parse("abs(x - 1) * exp(-x)"), iv, alpha, rho);
      CHECK(r.value >= -(r.err_estimate + 1e-10));
    }
  }
}

TEST_CASE("symmetric psi gives equal sides at rho = 1") {
  for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
    const Interval iv{1.0, 3.0};
    const Expr even = parse("(x - 2)^2 + exp(-(x - 2)^2)");
    const QuadResult l = katugampola(Side::kLeft, even, iv, alpha, 1.0);
    const QuadResult r = katugampola(Side::kRight, even, iv, alpha, 1.0);
    CHECK(std::abs(l.value - r.value) <= 1e-9 * std::abs(l.value) + l.err_estimate + r.err_estimate);
  }
}

TEST_CASE("operator mean reproduces the average of psi") {
  // alpha = 1: the operator mean is the plain mean of psi over [u^rho, v^rho].
  for (double rho : {0.5, 1.0, 2.0}) {
    const Interval iv{1.0, 2.0};
    const double lo = std::pow(iv.u, rho), hi = std::pow(iv.v, rho);
    const double want = (hi * hi * hi - lo * lo * lo) / 3.0 / (hi - lo);
    CHECK(std::abs(operator_mean(parse("x^2"), iv, 1.0, rho).value - want) <= 1e-10);
  }
  // Constant psi maps to itself for any order.
  CHECK(std::abs(operator_mean(parse("4"), {0.3, 1.7}, 0.7, 2.5).value - 4.0) <= 1e-10);
}

TEST_CASE("singular kernels near an endpoint and underflowing differences") {
  for (double alpha : {0.1, 0.3, 0.5}) {
    for (double rho : {0.5, 2.0, 3.0}) {
      const double r = operator_mean(parse("1"), {0.0, 1.0}, alpha, rho).value;
      INFO("alpha " << alpha << " rho " << rho);
      CHECK(std::abs(r - 1.0) <= 1e-9);
      CHECK(std::abs(operator_mean(parse("1"), {2.0, 2.5}, alpha, rho).value - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(katugampola(Side::kLeft, parse("x"), {1, 0}, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(katugampola(Side::kLeft, parse("x"), {0, 1}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(katugampola(Side::kLeft, parse("x"), {0, 1}, 1.0, 0.0), DomainError);
  CHECK_THROWS(katugampola(Side::kLeft, parse("ln(x - 2)"), {0, 1}, 1.0, 1.0));
}
