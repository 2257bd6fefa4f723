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

#include "d2dcache/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace d2dcache {

namespace {

void check_dimensions(const MobilityModel& m, const RequestModel& requests,
                      const SystemConfig& cfg) {
  cfg.validate();
  if (m.n_users() != cfg.n_users || requests.n_users() != cfg.n_users ||
      requests.n_files() != cfg.n_files) {
    throw std::invalid_argument("placement: dimension mismatch");
  }
}

}  // namespace

double marginal_gain(const CachePlacement& placement, int user, int file,
                     const MobilityModel& m, const RequestModel& requests,
                     const SystemConfig& cfg, RatioModel model) {
  if (placement.caches(user, file)) {
    throw std::invalid_argument("marginal_gain: element already placed");
  }
  CachePlacement with_element = placement;
  with_element.set(user, file, true);
  double gain =
      requests.prob(user, file) *
      (1.0 - per_request_ratio(m, placement, cfg, user, file, model));
  for (int i = 0; i < cfg.n_users; ++i) {
    if (i == user || placement.caches(i, file)) continue;
    const double before = per_request_ratio(m, placement, cfg, i, file, model);
    const double after =
        per_request_ratio(m, with_element, cfg, i, file, model);
    gain += requests.prob(i, file) * (after - before);
  }
  return gain / cfg.n_users;
}

GreedyResult greedy_place(const MobilityModel& m, const RequestModel& requests,
                          const SystemConfig& cfg, RatioModel model) {
  check_dimensions(m, requests, cfg);
  const int n_users = cfg.n_users;
  const int n_files = cfg.n_files;
  const int slots = cfg.cache_slots();

  GreedyResult result{CachePlacement(n_users, n_files), {}};
  CachePlacement& placement = result.placement;

  std::vector<double> gain(static_cast<size_t>(n_users) * n_files);
  std::vector<uint8_t> selectable(gain.size(), 1);
  auto at = [n_files](int j, int f) {
    return static_cast<size_t>(j) * n_files + f;
  };
  for (int j = 0; j < n_users; ++j) {
    for (int f = 0; f < n_files; ++f) {
      gain[at(j, f)] = marginal_gain(placement, j, f, m, requests, cfg, model);
    }
  }

  std::vector<int> used(n_users, 0);
  const long capacity = static_cast<long>(n_users) * slots;
  for (long placed = 0; placed < capacity; ++placed) {
    int best_user = -1;
    int best_file = -1;
    double best_gain = 0.0;
    for (int f = 0; f < n_files; ++f) {
      for (int j = 0; j < n_users; ++j) {
        if (!selectable[at(j, f)]) continue;
        // Tie-break: lower file index first, then lower user index; the scan
        // order visits candidates in exactly that priority.
        if (best_user < 0 || gain[at(j, f)] > best_gain) {
          best_user = j;
          best_file = f;
          best_gain = gain[at(j, f)];
        }
      }
    }
    if (best_user < 0) break;  // nothing selectable remains

    placement.set(best_user, best_file, true);
    result.gain_trace.push_back({best_user, best_file, best_gain});
    selectable[at(best_user, best_file)] = 0;
    if (++used[best_user] >= slots) {
      for (int f = 0; f < n_files; ++f) selectable[at(best_user, f)] = 0;
    }
    // Ratios depend only on who caches a given file, so only the selected
    // file's priorities change.
    for (int j = 0; j < n_users; ++j) {
      if (selectable[at(j, best_file)]) {
        gain[at(j, best_file)] =
            marginal_gain(placement, j, best_file, m, requests, cfg, model);
      }
    }
  }
  return result;
}

CachePlacement optimal_place(const MobilityModel& m,
                             const RequestModel& requests,
                             const SystemConfig& cfg, uint64_t budget) {
  check_dimensions(m, requests, cfg);
  const int n_users = cfg.n_users;
  const int n_files = cfg.n_files;
  const int slots = cfg.cache_slots();

  uint64_t n_states = 1;
  for (int i = 0; i < n_users; ++i) {
    if (n_states > budget) break;
    n_states *= static_cast<uint64_t>(slots) + 1;
  }
  const uint64_t n_subsets = uint64_t{1} << n_users;
  const double work = static_cast<double>(n_files) *
                      static_cast<double>(n_states) *
                      static_cast<double>(n_subsets);
  if (n_users >= 63 || work > static_cast<double>(budget)) {
    throw std::domain_error(
        "optimal_place: search space of about " +
        std::to_string(static_cast<uint64_t>(std::min(work, 1e18))) +
        " states exceeds the budget of " + std::to_string(budget));
  }

  // Per-file utility of every cacher subset; a placement's value decomposes
  // as a sum of these because per-request ratios depend only on who caches
  // the requested file.
  CachePlacement column(n_users, n_files);
  std::vector<std::vector<double>> utility(
      n_files, std::vector<double>(n_subsets, 0.0));
  for (int f = 0; f < n_files; ++f) {
    for (uint64_t mask = 0; mask < n_subsets; ++mask) {
      for (int j = 0; j < n_users; ++j) {
        column.set(j, f, (mask >> j) & 1);
      }
      double value = 0.0;
      for (int i = 0; i < n_users; ++i) {
        if ((mask >> i) & 1) {
          value += requests.prob(i, f);
        } else {
          value +=
              requests.prob(i, f) * per_request_ratio(m, column, cfg, i, f);
        }
      }
      utility[f][mask] = value / n_users;
    }
    for (int j = 0; j < n_users; ++j) column.set(j, f, false);
  }

  // Mixed-radix capacity state: digit i counts slots used at user i.
  std::vector<uint64_t> radix(n_users);
  uint64_t r = 1;
  for (int i = 0; i < n_users; ++i) {
    radix[i] = r;
    r *= static_cast<uint64_t>(slots) + 1;
  }
  const uint64_t total_states = r;

  const double kUnreachable = -1.0;
  std::vector<double> value(total_states, kUnreachable);
  value[0] = 0.0;
  // chosen[f][state]: cacher mask picked for file f to reach `state`.
  std::vector<std::vector<int64_t>> chosen(
      n_files, std::vector<int64_t>(total_states, -1));

  std::vector<int> digits(n_users);
  for (int f = 0; f < n_files; ++f) {
    std::vector<double> next(total_states, kUnreachable);
    std::vector<int64_t>& pick = chosen[f];
    for (uint64_t state = 0; state < total_states; ++state) {
      if (value[state] == kUnreachable) continue;
      uint64_t rem = state;
      for (int i = 0; i < n_users; ++i) {
        digits[i] = static_cast<int>(rem % (slots + 1));
        rem /= slots + 1;
      }
      for (uint64_t mask = 0; mask < n_subsets; ++mask) {
        bool feasible = true;
        uint64_t new_state = state;
        for (int i = 0; i < n_users && feasible; ++i) {
          if ((mask >> i) & 1) {
            if (digits[i] >= slots) {
              feasible = false;
            } else {
              new_state += radix[i];
            }
          }
        }
        if (!feasible) continue;
        const double candidate = value[state] + utility[f][mask];
        if (candidate > next[new_state]) {
          next[new_state] = candidate;
          pick[new_state] = static_cast<int64_t>(mask);
        }
      }
    }
    value = std::move(next);
  }

  uint64_t best_state = 0;
  double best_value = kUnreachable;
  for (uint64_t state = 0; state < total_states; ++state) {
    if (value[state] > best_value) {
      best_value = value[state];
      best_state = state;
    }
  }

  CachePlacement placement(n_users, n_files);
  uint64_t state = best_state;
  for (int f = n_files - 1; f >= 0; --f) {
    const int64_t mask = chosen[f][state];
    if (mask < 0) {
      throw std::logic_error("optimal_place: broken DP back-pointer");
    }
    for (int i = 0; i < n_users; ++i) {
      if ((mask >> i) & 1) {
        placement.set(i, f, true);
        state -= radix[i];
      }
    }
  }
  return placement;
}

CachePlacement random_place(const RequestModel& requests,
                            const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  if (requests.n_users() != cfg.n_users || requests.n_files() != cfg.n_files) {
    throw std::invalid_argument("random_place: dimension mismatch");
  }
  const int slots = std::min(cfg.cache_slots(), cfg.n_files);
  CachePlacement placement(cfg.n_users, cfg.n_files);
  std::vector<double> weights(cfg.n_files);
  for (int j = 0; j < cfg.n_users; ++j) {
    for (int f = 0; f < cfg.n_files; ++f) weights[f] = requests.prob(j, f);
    for (int draw = 0; draw < slots; ++draw) {
      const double total =
          std::accumulate(weights.begin(), weights.end(), 0.0);
      int picked = -1;
      if (total > 0.0) {
        double u = uniform01(rng) * total;
        for (int f = 0; f < cfg.n_files; ++f) {
          u -= weights[f];
          if (u < 0.0) {
            picked = f;
            break;
          }
        }
      }
      if (picked < 0) {
        // Residual mass is zero (or lost to rounding): take the first file
        // not yet drawn.
        for (int f = 0; f < cfg.n_files; ++f) {
          if (!placement.caches(j, f)) {
            picked = f;
            break;
          }
        }
      }
      placement.set(j, picked, true);
      weights[picked] = 0.0;
    }
  }
  return placement;
}

CachePlacement popular_place(const RequestModel& requests,
                             const SystemConfig& cfg) {
  cfg.validate();
  if (requests.n_users() != cfg.n_users || requests.n_files() != cfg.n_files) {
    throw std::invalid_argument("popular_place: dimension mismatch");
  }
  std::vector<double> average(cfg.n_files, 0.0);
  for (int i = 0; i < cfg.n_users; ++i) {
    for (int f = 0; f < cfg.n_files; ++f) average[f] += requests.prob(i, f);
  }
  std::vector<int> order(cfg.n_files);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (average[a] != average[b]) return average[a] > average[b];
    return a < b;
  });
  const int slots = std::min(cfg.cache_slots(), cfg.n_files);
  CachePlacement placement(cfg.n_users, cfg.n_files);
  for (int rank = 0; rank < slots; ++rank) {
    for (int j = 0; j < cfg.n_users; ++j) placement.set(j, order[rank], true);
  }
  return placement;
}

}  // namespace d2dcache
