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

#include "fhh/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "fhh/errors.hpp"

namespace fhh {

void QuadSettings::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol > 0.0 || rel_tol > 0.0)) {
    throw DomainError("QuadSettings: abs_tol > 0 or rel_tol > 0 required (both non-negative)");
  }
  if (max_levels < 3 || max_levels > 12) {
    throw DomainError("QuadSettings: max_levels must lie in [3, 12]");
  }
  if (fallback_subdivisions < 1) {
    throw DomainError("QuadSettings: fallback_subdivisions must be >= 1");
  }
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Nodes stop where the endpoint distance 2/(1+e^{2y}) drops to ~1e-300.
const double kMaxAbscissaParam = std::asinh(std::log(2.0e300) / 2.0 / kHalfPi);

// Minimum level at which |I_k - I_{k-1}| is trusted.
constexpr int kMinTrustedLevel = 3;

double tolerance_for(const QuadSettings& s, double value) {
  return std::max(s.abs_tol, s.rel_tol * std::abs(value));
}

class CountingIntegrand {
 public:
  CountingIntegrand(const Integrand& f, double a, double b)
      : f_(f), lo_(std::nextafter(a, b)), hi_(std::nextafter(b, a)) {
    if (lo_ > hi_) lo_ = hi_ = a + 0.5 * (b - a);
  }

  // Nodes whose x rounds onto an endpoint are pulled one ulp inside; the
  // distances stay exact.
  double operator()(Abscissa p) {
    ++count_;
    p.x = std::clamp(p.x, lo_, hi_);
    const double y = f_(p);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand returned a non-finite value at x = " << p.x;
      throw IntegrandError(os.str(), p.x);
    }
    return y;
  }

  std::size_t count() const { return count_; }

 private:
  const Integrand& f_;
  double lo_;
  double hi_;
  std::size_t count_ = 0;
};

struct LadderOutcome {
  QuadResult result;
  bool converged = false;
};

// A sub-range [lo, hi] of (a, b), given as offsets from a. Node distances to
// a and b are assembled from the offsets so they stay exact at the ends.
struct Span {
  double a;
  double total;   // b - a
  double lo;
  double hi;

  double width() const { return hi - lo; }
  double tail() const { return total - hi; }
};

// Sum of w(u) * [f(x(u)) + f(x(-u))] over u = k * step for odd k (or all k >= 1
// when `all` is set). The node pair is symmetric about the span midpoint.
double tanh_sinh_pairs(CountingIntegrand& f, const Span& sp, double step, bool all) {
  const double half = 0.5 * sp.width();
  double sum = 0.0;
  const int stride = all ? 1 : 2;
  for (int k = 1;; k += stride) {
    const double u = k * step;
    if (u > kMaxAbscissaParam) break;
    const double y = kHalfPi * std::sinh(u);
    const double cy = std::cosh(y);
    const double weight = kHalfPi * std::cosh(u) / (cy * cy);
    // 1 - tanh(y), without cancellation.
    const double comp = 2.0 / (1.0 + std::exp(2.0 * y));
    const double near = half * comp;           // distance to the closer span end
    const double far = sp.width() - near;      // distance to the other one
    if (!(near > 0.0)) break;
    const Abscissa right{sp.a + (sp.hi - near), sp.lo + far, sp.tail() + near};
    const Abscissa left{sp.a + (sp.lo + near), sp.lo + near, sp.tail() + far};
    sum += weight * (f(right) + f(left));
  }
  return sum;
}

LadderOutcome tanh_sinh(CountingIntegrand& f, const Span& sp, const QuadSettings& s) {
  const double half = 0.5 * sp.width();
  double step = 1.0;
  double sum = kHalfPi * f(Abscissa{sp.a + (sp.lo + half), sp.lo + half, sp.tail() + half}) +
               tanh_sinh_pairs(f, sp, step, true);
  double estimate = half * step * sum;
  double err = std::abs(estimate);

  for (int level = 1; level <= s.max_levels; ++level) {
    step *= 0.5;
    sum += tanh_sinh_pairs(f, sp, step, false);
    const double next = half * step * sum;
    err = std::abs(next - estimate);
    estimate = next;
    if (level >= kMinTrustedLevel && err <= tolerance_for(s, estimate)) {
      return {{estimate, err, f.count()}, true};
    }
  }
  return {{estimate, err, f.count()}, false};
}

// 15-point Kronrod / 7-point Gauss pair.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 1 - node.
constexpr std::array<double, 7> kKronrodComplements = {
    1.0 - kKronrodNodes[0], 1.0 - kKronrodNodes[1], 1.0 - kKronrodNodes[2],
    1.0 - kKronrodNodes[3], 1.0 - kKronrodNodes[4], 1.0 - kKronrodNodes[5],
    1.0 - kKronrodNodes[6]};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo_offset;   // offset of the segment start from a
  double hi_offset;   // offset of the segment end from a
  double value;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gauss_kronrod(CountingIntegrand& f, double a, double b, double lo, double hi) {
  const double total = b - a;
  const double half = 0.5 * (hi - lo);
  const double centre = lo + half;
  // Endpoint distances are assembled from the segment edges so that nodes
  // in a tiny end segment keep a non-zero distance.
  const double tail = total - hi;
  auto at = [&](double offset, double from_a, double to_b) {
    return f(Abscissa{a + offset, from_a, to_b});
  };
  const double fc = at(centre, lo + half, tail + half);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double edge = half * kKronrodComplements[j];   // half - dx
    const double pair = at(centre - dx, lo + edge, tail + half + dx) +
                        at(centre + dx, lo + half + dx, tail + edge);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Segments touching a or b may hold an endpoint singularity, where the
// Kronrod estimate barely shrinks under bisection; those use the tanh-sinh
// ladder instead.
Segment evaluate_segment(CountingIntegrand& f, double a, double b, double lo, double hi,
                         const QuadSettings& s) {
  if (lo > 0.0 && hi < b - a) return gauss_kronrod(f, a, b, lo, hi);
  const LadderOutcome r = tanh_sinh(f, Span{a, b - a, lo, hi}, s);
  return {lo, hi, r.result.value, r.result.err_estimate};
}

// Starts from the whole-interval ladder result.
LadderOutcome adaptive_gauss_kronrod(CountingIntegrand& f, double a, double b,
                                     const QuadSettings& s, const QuadResult& initial) {
  std::priority_queue<Segment> heap;
  const Segment whole{0.0, b - a, initial.value, initial.err_estimate};
  heap.push(whole);
  double value = whole.value;
  double err = whole.err;
  int segments = 1;
  while (err > tolerance_for(s, value) && segments < s.fallback_subdivisions) {
    const Segment worst = heap.top();
    heap.pop();
    const double split = 0.5 * (worst.lo_offset + worst.hi_offset);
    const Segment left = evaluate_segment(f, a, b, worst.lo_offset, split, s);
    const Segment right = evaluate_segment(f, a, b, split, worst.hi_offset, s);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Re-sum to shed the drift of the running totals.
  value = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  return {{value, err, f.count()}, err <= tolerance_for(s, value)};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadSettings& settings) {
  settings.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("integrate: finite a < b required");
  }
  CountingIntegrand counted(f, a, b);
  const LadderOutcome ladder = tanh_sinh(counted, Span{a, b - a, 0.0, b - a}, settings);
  if (ladder.converged) return ladder.result;

  const LadderOutcome fallback = adaptive_gauss_kronrod(counted, a, b, settings, ladder.result);
  if (fallback.converged) return fallback.result;

  const QuadResult& best =
      fallback.result.err_estimate < ladder.result.err_estimate ? fallback.result : ladder.result;
  std::ostringstream os;
  os.precision(6);
  os << "integrate: no convergence on [" << a << ", " << b << "], best estimate " << best.value
     << " +/- " << best.err_estimate;
  throw ConvergenceError(os.str(), best.value, best.err_estimate);
}

}  // namespace fhh
