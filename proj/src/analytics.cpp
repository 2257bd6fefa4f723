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

#include "d2dcache/analytics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dcache/quadrature.hpp"

namespace d2dcache {

namespace {

constexpr double kDegenerateRelTol = 1e-12;
// Switch from subset enumeration to quadrature beyond this many cachers.
constexpr int kClosedFormMaxCachers = 20;
// Products with more factors than this are accumulated in log space.
constexpr int kLogSpaceThreshold = 50;

// Rates of one cacher with an actual contact process towards the requester.
struct CacherRates {
  double noncontact_prob;  // stationary probability of being apart
  double rate_sum;         // contact_rate + intercontact_rate
  double rate_ratio;       // intercontact_rate / contact_rate
};

void check_requester(const CachePlacement& placement, int user, int file,
                     const char* op) {
  if (placement.caches(user, file)) {
    throw std::invalid_argument(std::string(op) +
                                ": requester already caches the file");
  }
}

// Cachers whose pair process with `user` has finite rates. Pairs without
// contacts contribute a factor of one everywhere and are dropped.
std::vector<CacherRates> effective_cachers(const MobilityModel& m,
                                           const CachePlacement& placement,
                                           int user, int file) {
  std::vector<CacherRates> out;
  for (const int j : placement.cachers_of(file, user)) {
    const PairParams& p = m.pair(user, j);
    if (!p.has_contact()) continue;
    out.push_back({stationary_noncontact_prob(p),
                   p.contact_rate + p.intercontact_rate,
                   p.intercontact_rate / p.contact_rate});
  }
  return out;
}

double product_of(const std::vector<double>& factors) {
  if (factors.size() > kLogSpaceThreshold) {
    double log_sum = 0.0;
    for (const double f : factors) log_sum += std::log(f);
    return std::exp(log_sum);
  }
  double prod = 1.0;
  for (const double f : factors) prod *= f;
  return prod;
}

// integral of (deadline - u) * exp(-rate * u) over [0, deadline];
// series expansion near rate*deadline -> 0 avoids cancellation.
double decay_weight_integral(double rate, double deadline) {
  const double s = rate * deadline;
  if (s < 1e-4) {
    return deadline * deadline *
           (0.5 - s / 6.0 + s * s / 24.0 - s * s * s / 120.0);
  }
  return (deadline - (1.0 - std::exp(-s)) / rate) / rate;
}

// Lentz evaluation of the incomplete-beta continued fraction.
double inc_beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIter = 2000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    const double m = iter;
    const double m2 = 2.0 * m;
    double numerator = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + numerator * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + numerator / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + numerator * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + numerator / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) return h;
  }
  throw std::runtime_error("inc_beta: continued fraction did not converge");
}

}  // namespace

double inc_beta(double q, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("inc_beta: shape parameters must be positive");
  }
  if (!(q >= 0.0) || !(q <= 1.0)) {
    throw std::invalid_argument("inc_beta: q must lie in [0, 1]");
  }
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(q) +
                           b * std::log1p(-q);
  const double front = std::exp(log_front);
  const bool below_pivot = q < (a + 1.0) / (a + b + 2.0);
  if (front == 0.0) {
    // The density mass at q underflowed; the tail on the pivot side is 0.
    return below_pivot ? 0.0 : 1.0;
  }
  double result;
  if (below_pivot) {
    result = front * inc_beta_cf(a, b, q) / a;
  } else {
    result = 1.0 - front * inc_beta_cf(b, a, 1.0 - q) / b;
  }
  return std::clamp(result, 0.0, 1.0);
}

double comm_expectation(const MobilityModel& m, const CachePlacement& placement,
                        int user, int file, double deadline) {
  check_requester(placement, user, file, "comm_expectation");
  const auto cachers = placement.cachers_of(file, user);
  if (cachers.empty()) return 0.0;
  std::vector<double> factors;
  factors.reserve(cachers.size());
  for (const int j : cachers) {
    factors.push_back(stationary_noncontact_prob(m.pair(user, j)));
  }
  return deadline * (1.0 - product_of(factors));
}

double comm_variance_integral(const MobilityModel& m,
                              const CachePlacement& placement, int user,
                              int file, double deadline) {
  check_requester(placement, user, file, "comm_variance_integral");
  if (placement.cachers_of(file, user).empty()) {
    throw std::invalid_argument("comm_variance_integral: no other user caches the file");
  }
  const auto cachers = effective_cachers(m, placement, user, file);
  if (cachers.empty()) return 0.0;  // all cachers unreachable: duration is 0
  auto integrand = [&](double u) {
    double prod = 1.0;
    for (const auto& c : cachers) {
      prod *= c.noncontact_prob *
              (c.noncontact_prob +
               (1.0 - c.noncontact_prob) * std::exp(-u * c.rate_sum));
    }
    return (deadline - u) * prod;
  };
  const double tol = 0.5e-9 * deadline * deadline;
  const double integral = adaptive_gauss_kronrod(integrand, 0.0, deadline, tol);
  std::vector<double> squares;
  squares.reserve(cachers.size());
  for (const auto& c : cachers) {
    squares.push_back(c.noncontact_prob * c.noncontact_prob);
  }
  const double variance = 2.0 * integral - deadline * deadline * product_of(squares);
  return std::max(variance, 0.0);
}

double comm_variance_closed(const MobilityModel& m,
                            const CachePlacement& placement, int user,
                            int file, double deadline, double speed_factor,
                            uint64_t subset_budget) {
  check_requester(placement, user, file, "comm_variance_closed");
  if (!(speed_factor > 0.0)) {
    throw std::invalid_argument("comm_variance_closed: speed factor must be positive");
  }
  if (placement.cachers_of(file, user).empty()) {
    throw std::invalid_argument("comm_variance_closed: no other user caches the file");
  }
  const auto cachers = effective_cachers(m, placement, user, file);
  const int k = static_cast<int>(cachers.size());
  if (k >= 63 || (uint64_t{1} << k) > subset_budget) {
    throw std::domain_error(
        "comm_variance_closed: subset enumeration over " + std::to_string(k) +
        " cachers exceeds the budget of " + std::to_string(subset_budget) +
        " subsets");
  }
  if (k == 0) return 0.0;

  double base = 1.0;
  for (const auto& c : cachers) base *= c.noncontact_prob * c.noncontact_prob;

  // Subset ratios/rate-sums built incrementally from each mask's lowest bit.
  const uint64_t n_subsets = uint64_t{1} << k;
  std::vector<double> ratio(n_subsets), rate(n_subsets);
  ratio[0] = 1.0;
  rate[0] = 0.0;
  double sum = 0.0;
  for (uint64_t mask = 1; mask < n_subsets; ++mask) {
    const int low = std::countr_zero(mask);
    const uint64_t rest = mask & (mask - 1);
    ratio[mask] = ratio[rest] * cachers[low].rate_ratio;
    rate[mask] = rate[rest] + cachers[low].rate_sum;
    const double scaled_rate = speed_factor * rate[mask];
    sum += ratio[mask] * decay_weight_integral(scaled_rate, deadline);
  }
  return 2.0 * base * sum;
}

CommMoments comm_moments(const MobilityModel& m, const CachePlacement& placement,
                         int user, int file, double deadline) {
  CommMoments moments;
  moments.expectation = comm_expectation(m, placement, user, file, deadline);
  const auto cachers = placement.cachers_of(file, user);
  if (cachers.empty()) return moments;
  const size_t effective =
      effective_cachers(m, placement, user, file).size();
  if (effective <= kClosedFormMaxCachers) {
    moments.variance = comm_variance_closed(m, placement, user, file, deadline);
  } else {
    moments.variance = comm_variance_integral(m, placement, user, file, deadline);
  }
  return moments;
}

BetaShape beta_match(const CommMoments& moments, double deadline) {
  const double mean = moments.expectation;
  const double variance = moments.variance;
  if (!(mean > 0.0) || !(mean < deadline)) {
    throw std::invalid_argument("beta_match: expectation must lie strictly inside (0, deadline)");
  }
  if (!(variance > 0.0) || !(variance < mean * (deadline - mean))) {
    throw std::runtime_error("beta_match: moments not feasible for positive beta shapes");
  }
  BetaShape shape;
  shape.alpha = mean * mean * (deadline - mean) / (variance * deadline) -
                mean / deadline;
  shape.beta = (deadline - mean) / mean * shape.alpha;
  if (!(shape.alpha > 0.0) || !(shape.beta > 0.0)) {
    throw std::runtime_error("beta_match: matched shapes not positive");
  }
  return shape;
}

namespace {

double beta_model_ratio(const MobilityModel& m, const CachePlacement& placement,
                        const SystemConfig& cfg, int user, int file) {
  const double deadline = cfg.deadline;
  const double expectation =
      comm_expectation(m, placement, user, file, deadline);
  if (expectation <= kDegenerateRelTol * deadline) return 0.0;
  const double deliverable = expectation * cfg.rate / cfg.file_size;
  if (expectation >= deadline * (1.0 - kDegenerateRelTol)) {
    return std::min(deliverable, 1.0);
  }
  const CommMoments moments =
      comm_moments(m, placement, user, file, deadline);
  if (moments.variance <=
      kDegenerateRelTol * expectation * (deadline - expectation)) {
    // Effectively deterministic communication duration.
    return std::clamp(deliverable, 0.0, 1.0);
  }
  const BetaShape shape = beta_match(moments, deadline);
  const double q = cfg.file_size / (deadline * cfg.rate);
  const double ratio = 1.0 - inc_beta(q, shape.alpha, shape.beta) +
                       deliverable * inc_beta(q, shape.alpha + 1.0, shape.beta);
  return std::clamp(ratio, 0.0, 1.0);
}

// Probability of at least one contact with a cacher within the deadline,
// for the baseline that assumes a single contact delivers the whole file.
double contact_opportunity_ratio(const MobilityModel& m,
                                 const CachePlacement& placement,
                                 const SystemConfig& cfg, int user, int file) {
  double prod = 1.0;
  for (const int j : placement.cachers_of(file, user)) {
    const PairParams& p = m.pair(user, j);
    if (!p.has_contact()) continue;
    prod *= stationary_noncontact_prob(p) *
            std::exp(-p.intercontact_rate * cfg.deadline);
  }
  return std::clamp(1.0 - prod, 0.0, 1.0);
}

}  // namespace

double per_request_ratio(const MobilityModel& m,
                         const CachePlacement& placement,
                         const SystemConfig& cfg, int user, int file,
                         RatioModel model) {
  check_requester(placement, user, file, "per_request_ratio");
  if (placement.cachers_of(file, user).empty()) return 0.0;
  if (model == RatioModel::kIgnoreContactDuration) {
    return contact_opportunity_ratio(m, placement, cfg, user, file);
  }
  return beta_model_ratio(m, placement, cfg, user, file);
}

double overall_ratio(const MobilityModel& m, const CachePlacement& placement,
                     const RequestModel& requests, const SystemConfig& cfg,
                     RatioModel model) {
  cfg.validate();
  if (m.n_users() != cfg.n_users || placement.n_users() != cfg.n_users ||
      placement.n_files() != cfg.n_files ||
      requests.n_users() != cfg.n_users ||
      requests.n_files() != cfg.n_files) {
    throw std::invalid_argument("overall_ratio: dimension mismatch");
  }
  double total = 0.0;
  for (int i = 0; i < cfg.n_users; ++i) {
    for (int f = 0; f < cfg.n_files; ++f) {
      const double p = requests.prob(i, f);
      if (p == 0.0) continue;
      if (placement.caches(i, f)) {
        total += p;
      } else {
        total += p * per_request_ratio(m, placement, cfg, i, f, model);
      }
    }
  }
  return std::clamp(total / cfg.n_users, 0.0, 1.0);
}

RequestModel zipf_requests(int n_users, int n_files, double exponent) {
  if (exponent < 0.0) {
    throw std::invalid_argument("zipf_requests: exponent must be non-negative");
  }
  std::vector<double> weights(n_files);
  double sum = 0.0;
  for (int f = 0; f < n_files; ++f) {
    weights[f] = std::pow(static_cast<double>(f + 1), -exponent);
    sum += weights[f];
  }
  std::vector<double> probs;
  probs.reserve(static_cast<size_t>(n_users) * n_files);
  for (int i = 0; i < n_users; ++i) {
    for (int f = 0; f < n_files; ++f) probs.push_back(weights[f] / sum);
  }
  return RequestModel(n_users, n_files, std::move(probs));
}

}  // namespace d2dcache
