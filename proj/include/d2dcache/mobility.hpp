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

#ifndef D2DCACHE_MOBILITY_HPP_
#define D2DCACHE_MOBILITY_HPP_

#include <utility>
#include <vector>

#include "d2dcache/core.hpp"
#include "d2dcache/rng.hpp"

namespace d2dcache {

/// One realization of a pair's alternating contact process: intervals tile
/// [0, horizon] exactly and strictly alternate between contact and apart.
struct PairTimeline {
  struct Interval {
    double start;
    double end;
    bool in_contact;
  };
  std::vector<Interval> intervals;
  double horizon = 0.0;

  double time_in_contact() const {
    double total = 0.0;
    for (const auto& iv : intervals) {
      if (iv.in_contact) total += iv.end - iv.start;
    }
    return total;
  }

  std::vector<std::pair<double, double>> contact_intervals() const {
    std::vector<std::pair<double, double>> out;
    for (const auto& iv : intervals) {
      if (iv.in_contact) out.emplace_back(iv.start, iv.end);
    }
    return out;
  }
};

/// Raw contact sightings, e.g. parsed from a Bluetooth encounter log. Records
/// for the same pair may overlap; estimation merges them.
struct ContactTrace {
  struct Record {
    int user_a;
    int user_b;
    double t_start;
    double t_end;
  };
  std::vector<Record> records;
  int n_users = 0;

  void validate() const;
};

/// Stationary probability that a pair is NOT in contact:
/// contact_rate / (contact_rate + intercontact_rate); 1 for pairs that never
/// meet.
double stationary_noncontact_prob(const PairParams& p);

/// Multiplies every finite rate by `factor`, modeling all users moving
/// `factor` times faster. Pairs without contacts are preserved unchanged.
MobilityModel scale_speed(const MobilityModel& m, double factor);

/// Samples a stationary realization over [0, horizon]: the initial state is
/// drawn from the stationary distribution and the first duration is a full
/// exponential (residual life of an exponential is exponential).
PairTimeline sample_pair_timeline(const PairParams& p, double horizon, Rng& rng);

/// Merges possibly-overlapping records of one pair into maximal contact
/// intervals clipped to [window_start, window_end]. Records touching at the
/// boundary (t_start <= previous t_end) are merged.
std::vector<std::pair<double, double>> merged_pair_contacts(
    const ContactTrace& trace, int user_a, int user_b, double window_start,
    double window_end);

struct PairFitDiagnostic {
  int user_a;
  int user_b;
  int n_contact_intervals;  // merged intervals seen, but no interior gap
};

struct TraceFit {
  MobilityModel model;
  std::vector<PairFitDiagnostic> pairs_without_gaps;
};

/// Estimates per-pair rates from a trace as the inverse of the average merged
/// contact duration and the inverse of the average gap between consecutive
/// merged intervals inside the window. Pairs with no contacts get the
/// no-contact convention; pairs with contacts but no measurable gap are also
/// mapped to the no-contact convention and reported in the diagnostics list.
TraceFit fit_from_trace(const ContactTrace& trace, double window_start,
                        double window_end);

}  // namespace d2dcache

#endif  // D2DCACHE_MOBILITY_HPP_
