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

#include "d2dcache/instancegen.hpp"

#include <random>

namespace d2dcache {

MobilityModel sample_mobility(int n_users, const GammaSpec& intercontact_spec,
                              const GammaSpec& contact_spec, Rng& rng) {
  intercontact_spec.validate();
  contact_spec.validate();
  MobilityModel m(n_users);
  std::gamma_distribution<double> intercontact(intercontact_spec.shape,
                                               intercontact_spec.scale);
  std::gamma_distribution<double> contact(contact_spec.shape,
                                          contact_spec.scale);
  for (int i = 0; i < n_users; ++i) {
    for (int j = i + 1; j < n_users; ++j) {
      PairParams p;
      p.intercontact_rate = intercontact(rng);
      p.contact_rate = contact(rng);
      m.set_pair(i, j, p);
    }
  }
  return m;
}

MobilityModel sweep_contact_duration(int n_users, double mean_contact_duration,
                                     Rng& rng,
                                     const GammaSpec& intercontact_spec) {
  if (!(mean_contact_duration > 0.0)) {
    throw std::invalid_argument(
        "sweep_contact_duration: mean contact duration must be positive");
  }
  const GammaSpec contact_spec = GammaSpec::from_moments(
      1.0 / mean_contact_duration, kDefaultInterContactSpec.variance());
  return sample_mobility(n_users, intercontact_spec, contact_spec, rng);
}

}  // namespace d2dcache
