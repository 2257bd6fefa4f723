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

#ifndef D2DCACHE_ANALYTICS_HPP_
#define D2DCACHE_ANALYTICS_HPP_

#include <cstdint>

#include "d2dcache/core.hpp"
#include "d2dcache/mobility.hpp"

namespace d2dcache {

/// First two moments of the D2D communication duration within the deadline.
struct CommMoments {
  double expectation = 0.0;  // seconds
  double variance = 0.0;     // seconds^2
};

/// Shape parameters of the beta distribution approximating the normalized
/// communication duration.
struct BetaShape {
  double alpha = 0.0;
  double beta = 0.0;
};

/// How the per-request offloading ratio is evaluated. kBetaApprox is the full
/// model; kIgnoreContactDuration assumes one contact suffices to deliver the
/// whole file and only uses inter-contact information (the baseline strategy
/// that disregards contact-duration variation).
enum class RatioModel { kBetaApprox, kIgnoreContactDuration };

/// Regularized incomplete beta function I_q(a, b), evaluated by a Lentz
/// continued fraction with the symmetry I_q(a,b) = 1 - I_{1-q}(b,a).
double inc_beta(double q, double a, double b);

/// Expected communication duration when `user` requests `file` it does not
/// cache: deadline * (1 - product of the cachers' non-contact probabilities).
/// Zero when nobody else caches the file.
double comm_expectation(const MobilityModel& m, const CachePlacement& placement,
                        int user, int file, double deadline);

/// Variance of the communication duration by adaptive quadrature of the
/// stationary two-point correlation integral (absolute tolerance
/// 1e-9 * deadline^2). Requires at least one other cacher.
double comm_variance_integral(const MobilityModel& m,
                              const CachePlacement& placement, int user,
                              int file, double deadline);

inline constexpr uint64_t kDefaultSubsetBudget = uint64_t{1} << 20;

/// Same variance in closed form via subset-sum expansion over the cachers,
/// with an optional uniform speed factor applied to all rates. Enumerates
/// 2^k subsets; rejects k beyond the subset budget.
double comm_variance_closed(const MobilityModel& m,
                            const CachePlacement& placement, int user,
                            int file, double deadline,
                            double speed_factor = 1.0,
                            uint64_t subset_budget = kDefaultSubsetBudget);

/// Both moments, choosing the closed form for up to 20 cachers and quadrature
/// beyond that.
CommMoments comm_moments(const MobilityModel& m,
                         const CachePlacement& placement, int user, int file,
                         double deadline);

/// Matches a beta distribution on [0, 1] to the moments of the communication
/// duration normalized by the deadline. Requires feasible moments
/// (0 < E < deadline, 0 < Var < E*(deadline-E)).
BetaShape beta_match(const CommMoments& moments, double deadline);

/// Per-request offloading ratio for `user` requesting un-cached `file`:
/// expected fraction of the file deliverable over D2D within the deadline,
/// clamped to [0, 1]. Zero when nobody else caches the file.
double per_request_ratio(const MobilityModel& m,
                         const CachePlacement& placement,
                         const SystemConfig& cfg, int user, int file,
                         RatioModel model = RatioModel::kBetaApprox);

/// Overall data offloading ratio: request-probability-weighted average of
/// self hits and per-request D2D ratios across all users and files.
double overall_ratio(const MobilityModel& m, const CachePlacement& placement,
                     const RequestModel& requests, const SystemConfig& cfg,
                     RatioModel model = RatioModel::kBetaApprox);

/// Zipf request probabilities with the given exponent, identical across
/// users: p(f) proportional to (f+1)^-exponent.
RequestModel zipf_requests(int n_users, int n_files, double exponent);

}  // namespace d2dcache

#endif  // D2DCACHE_ANALYTICS_HPP_
