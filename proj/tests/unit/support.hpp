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

// Small helpers shared by the unit tests: seeded generators and tolerance
// comparisons.

#ifndef FHH_TESTS_SUPPORT_HPP
#define FHH_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace fhh::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Polynomial coefficients c_0..c_degree in [-2, 2].
  std::vector<double> polynomial(int degree) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (double& x : c) x = uniform(-2.0, 2.0);
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Exact integral of the polynomial over [a, b].
inline double poly_integral(const std::vector<double>& c, double a, double b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double n = static_cast<double>(k) + 1.0;
    sum += c[k] * (std::pow(b, n) - std::pow(a, n)) / n;
  }
  return sum;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace fhh::testing

#endif  // FHH_TESTS_SUPPORT_HPP
