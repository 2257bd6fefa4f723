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

// Test-only oracles, written against the plain standard library on purpose:
// they must not share code with the implementation paths they check.

#ifndef D2DCACHE_TESTS_TESTUTIL_HPP_
#define D2DCACHE_TESTS_TESTUTIL_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace testutil {

struct OraclePair {
  double contact_rate;
  double inter_rate;
};

// Samples one stationary request window of length `deadline` for every donor
// pair and returns the total time at least one donor is in contact.
inline double oracle_union_time(const std::vector<OraclePair>& donors,
                                double deadline, std::mt19937_64& rng) {
  std::vector<std::pair<double, double>> spans;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& d : donors) {
    const double p_contact = d.inter_rate / (d.contact_rate + d.inter_rate);
    bool in_contact = unit(rng) < p_contact;
    double t = 0.0;
    while (t < deadline) {
      std::exponential_distribution<double> dur(in_contact ? d.contact_rate
                                                           : d.inter_rate);
      const double end = std::min(t + dur(rng), deadline);
      if (in_contact) spans.emplace_back(t, end);
      t = end;
      in_contact = !in_contact;
    }
  }
  std::sort(spans.begin(), spans.end());
  double total = 0.0;
  double covered = -1.0;
  for (const auto& [s, e] : spans) {
    if (s > covered) {
      total += e - s;
      covered = e;
    } else if (e > covered) {
      total += e - covered;
      covered = e;
    }
  }
  return total;
}

struct MeanVar {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
  double std_error() const { return std::sqrt(variance() / n); }
};

// Recursive adaptive Simpson integration, independent of the library's
// Gauss-Kronrod scheme.
template <typename F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <typename F>
double simpson_integrate(F f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

// Regularized incomplete beta by direct quadrature of the density. Splits at
// interior extrema-free points and relies on lgamma for normalization.
inline double oracle_inc_beta(double q, double a, double b) {
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  // Keep the integration range away from the upper-endpoint singularity.
  if (q > 0.5) return 1.0 - oracle_inc_beta(1.0 - q, b, a);
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  auto density = [&](double z) {
    if (z <= 0.0 || z >= 1.0) return 0.0;
    return std::exp(log_norm + (a - 1.0) * std::log(z) +
                    (b - 1.0) * std::log1p(-z));
  };
  // Integrable endpoint singularities (shape < 1) are handled by a power
  // substitution z = u^(1/a) near 0, which regularizes z^(a-1) dz exactly.
  const double split = std::min(q, 0.5);
  auto near_zero = [&](double u) {
    const double z = std::pow(u, 1.0 / a);
    return std::exp(log_norm) * std::pow(1.0 - z, b - 1.0) / a;
  };
  const double part1 =
      simpson_integrate(near_zero, 0.0, std::pow(split, a), 1e-13);
  double part2 = 0.0;
  if (q > split) part2 = simpson_integrate(density, split, q, 1e-13);
  return part1 + part2;
}

}  // namespace testutil

#endif  // D2DCACHE_TESTS_TESTUTIL_HPP_
