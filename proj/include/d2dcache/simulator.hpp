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

#ifndef D2DCACHE_SIMULATOR_HPP_
#define D2DCACHE_SIMULATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "d2dcache/core.hpp"
#include "d2dcache/mobility.hpp"

namespace d2dcache {

enum class SimMode { kUnionTime, kResourceLimited };

struct SimScenario {
  MobilityModel mobility;
  CachePlacement placement;
  RequestModel requests;
  SystemConfig cfg;
  int n_requests_per_user = 1;
  uint64_t seed = 0;
  SimMode mode = SimMode::kUnionTime;
  int resource_blocks = 0;  // only read in resource-limited mode

  void validate() const;
};

/// Monte Carlo estimate of the data offloading ratio with diagnostics.
struct OffloadReport {
  double mean_ratio = 0.0;
  double std_error = 0.0;
  std::vector<double> per_user_ratio;
  long n_samples = 0;
  std::string mode;

  /// CSV serialization: header `metric,value,stderr,n`, one row for the mean
  /// and one per user, preceded by a `# mode=...` comment.
  std::string to_csv() const;
};

/// Estimates the offloading ratio request by request: each request observes
/// fresh stationary pair timelines over one deadline window, and the score is
/// the deliverable fraction of the file over the union of contact intervals
/// with the cachers (1 for self-cached files).
OffloadReport simulate_union(const SimScenario& s);

/// Event-driven simulation on a shared timeline where every user issues
/// back-to-back requests, a donor serves at most one receiver at a time and
/// at most `resource_blocks` D2D links are active globally. Links are
/// re-selected at random at every event.
OffloadReport simulate_resource_limited(const SimScenario& s);

/// Like simulate_union, but contact state is replayed from the merged trace
/// intervals and request epochs are drawn uniformly over the window (minus
/// one deadline so each request observes a full window).
OffloadReport replay_trace(const ContactTrace& trace,
                           const CachePlacement& placement,
                           const RequestModel& requests,
                           const SystemConfig& cfg, double window_start,
                           double window_end, int n_requests_per_user,
                           uint64_t seed);

}  // namespace d2dcache

#endif  // D2DCACHE_SIMULATOR_HPP_
