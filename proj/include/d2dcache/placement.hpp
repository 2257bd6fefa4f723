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

#ifndef D2DCACHE_PLACEMENT_HPP_
#define D2DCACHE_PLACEMENT_HPP_

#include <cstdint>
#include <vector>

#include "d2dcache/analytics.hpp"
#include "d2dcache/core.hpp"
#include "d2dcache/rng.hpp"

namespace d2dcache {

/// One greedy selection: the chosen (user, file) element and its marginal
/// gain in overall offloading ratio at selection time.
struct PriorityEntry {
  int user;
  int file;
  double gain;
};

struct GreedyResult {
  CachePlacement placement;
  std::vector<PriorityEntry> gain_trace;  // in selection order
};

/// Marginal gain of adding (user, file) to the placement: the self term plus
/// the improvement for every other user that does not cache the file.
/// Only file-local ratios are recomputed.
double marginal_gain(const CachePlacement& placement, int user, int file,
                     const MobilityModel& m, const RequestModel& requests,
                     const SystemConfig& cfg,
                     RatioModel model = RatioModel::kBetaApprox);

/// Greedy maximization of the analytic offloading ratio under the per-user
/// capacity constraint: repeatedly adds the feasible element of maximum
/// priority, then refreshes priorities of the selected file only (ratios of
/// other files are unaffected). Ties break on lower file, then lower user
/// index. Returns the placement and the ordered gain trace.
GreedyResult greedy_place(const MobilityModel& m, const RequestModel& requests,
                          const SystemConfig& cfg,
                          RatioModel model = RatioModel::kBetaApprox);

/// Exact maximizer of the analytic offloading ratio by file-major dynamic
/// programming over per-user remaining-capacity states. Rejects instances
/// whose DP work bound n_files * (slots+1)^n_users * 2^n_users exceeds
/// `budget`. Deterministic: among ties, earlier files prefer smaller cacher
/// sets.
CachePlacement optimal_place(const MobilityModel& m,
                             const RequestModel& requests,
                             const SystemConfig& cfg,
                             uint64_t budget = 10'000'000);

/// Each user independently draws its cache slots by weighted sampling
/// without replacement, weights proportional to its request probabilities.
CachePlacement random_place(const RequestModel& requests,
                            const SystemConfig& cfg, Rng& rng);

/// Every user caches the files with the highest average request probability;
/// ties break on lower file index.
CachePlacement popular_place(const RequestModel& requests,
                             const SystemConfig& cfg);

}  // namespace d2dcache

#endif  // D2DCACHE_PLACEMENT_HPP_
