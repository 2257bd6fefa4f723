// Copyright 2026 The Authors.
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

#ifndef D2DCACHE_QUADRATURE_HPP_
#define D2DCACHE_QUADRATURE_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace d2dcache {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <typename F>
std::pair<double, double> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int k = 0; k < 7; ++k) {
    const double offset = half * kKronrodNodes[k];
    const double sum = f(center - offset) + f(center + offset);
    kronrod += kKronrodWeights[k] * sum;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * sum;
  }
  const double fc = f(center);
  kronrod += kKronrodWeights[7] * fc;
  gauss += kGaussWeights[3] * fc;
  return {half * kronrod, std::abs(half * (kronrod - gauss))};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to the given absolute
/// tolerance. Bisects the worst interval until local error estimates fit
/// within the tolerance, pro-rated by interval length. Throws
/// QuadratureError if the interval budget is exhausted first.
template <typename F>
double adaptive_gauss_kronrod(F&& f, double a, double b, double abs_tol,
                              int max_intervals = 4096) {
  if (!(b > a)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("adaptive_gauss_kronrod: b < a");
  }
  struct Segment {
    double a, b, value, error;
  };
  auto eval = [&](double lo, double hi) {
    auto [value, error] = detail::gauss_kronrod_15(f, lo, hi);
    return Segment{lo, hi, value, error};
  };
  std::vector<Segment> segments{eval(a, b)};
  const double span = b - a;
  for (int round = 0; round < max_intervals; ++round) {
    double total = 0.0;
    double total_error = 0.0;
    size_t worst = 0;
    double worst_excess = 0.0;
    for (size_t s = 0; s < segments.size(); ++s) {
      total += segments[s].value;
      total_error += segments[s].error;
      const double budget = abs_tol * (segments[s].b - segments[s].a) / span;
      const double excess = segments[s].error - budget;
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = s;
      }
    }
    if (total_error <= abs_tol || worst_excess <= 0.0) return total;
    const Segment bad = segments[worst];
    const double mid = 0.5 * (bad.a + bad.b);
    segments[worst] = eval(bad.a, mid);
    segments.push_back(eval(mid, bad.b));
  }
  throw QuadratureError("adaptive_gauss_kronrod: did not converge within interval budget");
}

}  // namespace d2dcache

#endif  // D2DCACHE_QUADRATURE_HPP_
