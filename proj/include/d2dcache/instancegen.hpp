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

#ifndef D2DCACHE_INSTANCEGEN_HPP_
#define D2DCACHE_INSTANCEGEN_HPP_

#include "d2dcache/core.hpp"
#include "d2dcache/rng.hpp"

namespace d2dcache {

/// Gamma distribution in the (shape k, scale theta) parameterization:
/// mean = k * theta, variance = k * theta^2.
struct GammaSpec {
  double shape = 0.0;
  double scale = 0.0;

  double mean() const { return shape * scale; }
  double variance() const { return shape * scale * scale; }

  static GammaSpec from_moments(double mean, double variance) {
    if (!(mean > 0.0) || !(variance > 0.0)) {
      throw std::invalid_argument("GammaSpec: moments must be positive");
    }
    return {mean * mean / variance, variance / mean};
  }

  void validate() const {
    if (!(shape > 0.0) || !(scale > 0.0)) {
      throw std::invalid_argument("GammaSpec: shape and scale must be positive");
    }
  }
};

/// Measurement-study defaults: inter-contact rates with mean 4.43/1088 per
/// second (about 246 s mean inter-contact duration) and contact rates five
/// times as large (mean contact duration one fifth of the inter-contact one).
inline constexpr GammaSpec kDefaultInterContactSpec{4.43, 1.0 / 1088.0};
inline constexpr GammaSpec kDefaultContactSpec{4.43 * 25.0, 1.0 / 1088.0 / 5.0};

/// Draws every unordered pair's inter-contact and contact rates
/// independently from the given gamma distributions.
MobilityModel sample_mobility(int n_users, const GammaSpec& intercontact_spec,
                              const GammaSpec& contact_spec, Rng& rng);

/// Contact-duration sweep: contact rates are drawn from a gamma distribution
/// reparameterized to mean 1/mean_contact_duration with the default spec's
/// variance; inter-contact rates come from `intercontact_spec`.
MobilityModel sweep_contact_duration(
    int n_users, double mean_contact_duration, Rng& rng,
    const GammaSpec& intercontact_spec = kDefaultInterContactSpec);

}  // namespace d2dcache

#endif  // D2DCACHE_INSTANCEGEN_HPP_
