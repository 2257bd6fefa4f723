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

#include "d2dcache/simulator.hpp"

#include <cmath>

#include "d2dcache/analytics.hpp"
#include "d2dcache/instancegen.hpp"
#include "d2dcache/placement.hpp"
#include "doctest.h"

using namespace d2dcache;

namespace {

SystemConfig make_config(int n_users, int n_files, int slots,
                         double deadline = 300.0) {
  SystemConfig cfg;
  cfg.file_size = 3e8;
  cfg.cache_size = 3e8 * slots;
  cfg.rate = 1.5e6;
  cfg.deadline = deadline;
  cfg.n_files = n_files;
  cfg.n_users = n_users;
  return cfg;
}

SimScenario make_scenario(MobilityModel m, CachePlacement placement,
                          RequestModel requests, SystemConfig cfg,
                          int n_requests, uint64_t seed) {
  return SimScenario{std::move(m),   std::move(placement),
                     std::move(requests), cfg,
                     n_requests,     seed,
                     SimMode::kUnionTime, 0};
}

double combined_stderr(const OffloadReport& a, const OffloadReport& b) {
  return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

}  // namespace

TEST_CASE("simulate_union exact corner cases") {
  const SystemConfig cfg = make_config(2, 2, 2);
  const RequestModel requests = zipf_requests(2, 2, 0.6);

  SUBCASE("everything cached locally scores exactly one") {
    CachePlacement full(2, 2);
    for (int j = 0; j < 2; ++j) {
      for (int f = 0; f < 2; ++f) full.set(j, f, true);
    }
    const OffloadReport report = simulate_union(
        make_scenario(MobilityModel(2), full, requests, cfg, 50, 1));
    CHECK(report.mean_ratio == 1.0);
    CHECK(report.std_error == 0.0);
  }
  SUBCASE("no contacts and no self hits scores exactly zero") {
    CachePlacement placement(2, 2);
    placement.set(1, 0, true);
    RequestModel only_first(2, 2, {1.0, 0.0, 1.0, 0.0});
    SimScenario s = make_scenario(MobilityModel(2), placement, only_first,
                                  cfg, 50, 1);
    // User 1 self-caches nothing and user 0 can never reach the cacher.
    s.placement.set(1, 0, true);
    const OffloadReport report = simulate_union(s);
    CHECK(report.per_user_ratio[0] == 0.0);
  }
  SUBCASE("rejects bad request counts and wrong modes") {
    SimScenario s = make_scenario(MobilityModel(2), CachePlacement(2, 2),
                                  requests, cfg, 0, 1);
    CHECK_THROWS_AS(simulate_union(s), std::invalid_argument);
    s.n_requests_per_user = 5;
    s.mode = SimMode::kResourceLimited;
    s.resource_blocks = 1;
    CHECK_THROWS_AS(simulate_union(s), std::invalid_argument);
  }
}

TEST_CASE("simulate_union is deterministic per seed") {
  const SystemConfig cfg = make_config(3, 4, 1);
  const RequestModel requests = zipf_requests(3, 4, 0.6);
  Rng rng = substream(3, "sim-mobility");
  const MobilityModel m =
      sample_mobility(3, kDefaultInterContactSpec, kDefaultContactSpec, rng);
  CachePlacement placement(3, 4);
  placement.set(0, 0, true);
  placement.set(1, 1, true);
  placement.set(2, 0, true);
  const SimScenario s = make_scenario(m, placement, requests, cfg, 400, 77);
  const OffloadReport a = simulate_union(s);
  const OffloadReport b = simulate_union(s);
  CHECK(a.mean_ratio == b.mean_ratio);
  CHECK(a.std_error == b.std_error);
  CHECK(a.per_user_ratio == b.per_user_ratio);
  CHECK(a.n_samples == b.n_samples);

  SUBCASE("standard error shrinks like the square root of the sample size") {
    SimScenario s4 = s;
    s4.n_requests_per_user = 4 * s.n_requests_per_user;
    const OffloadReport big = simulate_union(s4);
    const double shrink = big.std_error / a.std_error;
    CHECK(shrink >= 0.4);
    CHECK(shrink <= 0.6);
  }
}

TEST_CASE("simulate_union tracks the analytic ratio") {
  const SystemConfig cfg = make_config(6, 10, 2);
  const RequestModel requests = zipf_requests(6, 10, 0.6);
  Rng rng = substream(9, "sim-vs-analytic");
  const MobilityModel m =
      sample_mobility(6, kDefaultInterContactSpec, kDefaultContactSpec, rng);
  const CachePlacement placement = random_place(requests, cfg, rng);
  const double analytic = overall_ratio(m, placement, requests, cfg);
  const OffloadReport report =
      simulate_union(make_scenario(m, placement, requests, cfg, 4000, 5));
  CHECK(std::abs(analytic - report.mean_ratio) <= 0.02);
}

TEST_CASE("simulated ratio is non-decreasing in the speed factor") {
  const SystemConfig cfg = make_config(5, 8, 2, 120.0);
  SystemConfig cfg_small = cfg;
  cfg_small.file_size = 1e8;
  cfg_small.cache_size = 2e8;
  const RequestModel requests = zipf_requests(5, 8, 0.6);
  Rng rng = substream(10, "sim-speed");
  const MobilityModel base =
      sample_mobility(5, kDefaultInterContactSpec, kDefaultContactSpec, rng);
  const CachePlacement placement = random_place(requests, cfg_small, rng);
  double previous = -1.0;
  double previous_se = 0.0;
  for (const double mu : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const OffloadReport report = simulate_union(make_scenario(
        scale_speed(base, mu), placement, requests, cfg_small, 3000, 11));
    CHECK(report.mean_ratio >=
          previous - 2.0 * (report.std_error + previous_se));
    previous = report.mean_ratio;
    previous_se = report.std_error;
  }
}

TEST_CASE("resource-limited simulation") {
  SUBCASE("rejects zero blocks") {
    const SystemConfig cfg = make_config(2, 2, 1);
    SimScenario s = make_scenario(MobilityModel(2), CachePlacement(2, 2),
                                  zipf_requests(2, 2, 0.6), cfg, 5, 3);
    s.mode = SimMode::kResourceLimited;
    s.resource_blocks = 0;
    CHECK_THROWS_AS(simulate_resource_limited(s), std::invalid_argument);
  }
  SUBCASE("with dedicated donors and ample blocks it matches union mode") {
    // Users 0 and 2 request; users 1 and 3 are their only donors and cache
    // everything, so no donor or block constraint ever binds.
    const int n_users = 4;
    const SystemConfig cfg = make_config(n_users, 2, 2);
    MobilityModel m(n_users);
    m.set_pair(0, 1, {1.0 / 60.0, 1.0 / 300.0});
    m.set_pair(2, 3, {1.0 / 45.0, 1.0 / 400.0});
    CachePlacement placement(n_users, 2);
    for (int f = 0; f < 2; ++f) {
      placement.set(1, f, true);
      placement.set(3, f, true);
    }
    const RequestModel requests = zipf_requests(n_users, 2, 0.6);
    SimScenario constrained =
        make_scenario(m, placement, requests, cfg, 4000, 21);
    constrained.mode = SimMode::kResourceLimited;
    constrained.resource_blocks = n_users;
    const OffloadReport limited = simulate_resource_limited(constrained);
    SimScenario unconstrained =
        make_scenario(m, placement, requests, cfg, 4000, 22);
    const OffloadReport unlimited = simulate_union(unconstrained);
    CHECK(std::abs(limited.mean_ratio - unlimited.mean_ratio) <=
          2.0 * combined_stderr(limited, unlimited));
  }
  SUBCASE("scarce blocks only remove capacity") {
    const int n_users = 6;
    const SystemConfig cfg = make_config(n_users, 6, 2);
    Rng rng = substream(23, "res-mobility");
    const MobilityModel m = sample_mobility(
        n_users, kDefaultInterContactSpec, kDefaultContactSpec, rng);
    const RequestModel requests = zipf_requests(n_users, 6, 0.8);
    const CachePlacement placement = random_place(requests, cfg, rng);
    SimScenario constrained =
        make_scenario(m, placement, requests, cfg, 2500, 31);
    constrained.mode = SimMode::kResourceLimited;
    constrained.resource_blocks = 1;  // at most one link in the whole network
    const OffloadReport limited = simulate_resource_limited(constrained);
    SimScenario free_run = make_scenario(m, placement, requests, cfg, 2500, 32);
    const OffloadReport unlimited = simulate_union(free_run);
    CHECK(limited.mean_ratio <=
          unlimited.mean_ratio + 3.0 * combined_stderr(limited, unlimited));
    CHECK(limited.mean_ratio >= 0.0);
    CHECK(limited.mean_ratio <= 1.0);
  }
  SUBCASE("deterministic per seed") {
    const SystemConfig cfg = make_config(3, 3, 1);
    Rng rng = substream(25, "res-det");
    const MobilityModel m = sample_mobility(3, kDefaultInterContactSpec,
                                            kDefaultContactSpec, rng);
    const RequestModel requests = zipf_requests(3, 3, 0.6);
    CachePlacement placement(3, 3);
    placement.set(0, 0, true);
    placement.set(1, 1, true);
    placement.set(2, 2, true);
    SimScenario s = make_scenario(m, placement, requests, cfg, 300, 8);
    s.mode = SimMode::kResourceLimited;
    s.resource_blocks = 2;
    const OffloadReport a = simulate_resource_limited(s);
    const OffloadReport b = simulate_resource_limited(s);
    CHECK(a.mean_ratio == b.mean_ratio);
    CHECK(a.per_user_ratio == b.per_user_ratio);
  }
}

TEST_CASE("replay_trace") {
  SUBCASE("permanent contact with a single cacher delivers everything") {
    ContactTrace trace;
    trace.n_users = 2;
    trace.records = {{0, 1, 0.0, 5000.0}};
    const SystemConfig cfg = make_config(2, 1, 1);
    CachePlacement placement(2, 1);
    placement.set(1, 0, true);
    const RequestModel requests(2, 1, {1.0, 1.0});
    const OffloadReport report =
        replay_trace(trace, placement, requests, cfg, 0.0, 5000.0, 100, 17);
    CHECK(report.per_user_ratio[0] == 1.0);
  }
  SUBCASE("rejects empty or too-short windows") {
    ContactTrace trace;
    trace.n_users = 2;
    trace.records = {{0, 1, 0.0, 5000.0}};
    const SystemConfig cfg = make_config(2, 1, 1);
    const RequestModel requests(2, 1, {1.0, 1.0});
    CHECK_THROWS_AS(replay_trace(trace, CachePlacement(2, 1), requests, cfg,
                                 100.0, 100.0, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(replay_trace(trace, CachePlacement(2, 1), requests, cfg,
                                 0.0, 200.0, 10, 1),
                    std::invalid_argument);
  }
  SUBCASE("replaying a synthetic trace matches the sampled-model simulator") {
    const int n_users = 4;
    const SystemConfig cfg = make_config(n_users, 4, 1);
    Rng rng = substream(29, "replay-mobility");
    const MobilityModel m = sample_mobility(
        n_users, kDefaultInterContactSpec, kDefaultContactSpec, rng);
    const RequestModel requests = zipf_requests(n_users, 4, 0.8);
    CachePlacement placement(n_users, 4);
    placement.set(0, 0, true);
    placement.set(1, 1, true);
    placement.set(2, 0, true);
    placement.set(3, 2, true);

    const double horizon = 4e5;
    ContactTrace trace;
    trace.n_users = n_users;
    Rng pair_rng = substream(30, "replay-pairs");
    for (int i = 0; i < n_users; ++i) {
      for (int j = i + 1; j < n_users; ++j) {
        const PairTimeline t =
            sample_pair_timeline(m.pair(i, j), horizon, pair_rng);
        for (const auto& iv : t.intervals) {
          if (iv.in_contact) trace.records.push_back({i, j, iv.start, iv.end});
        }
      }
    }
    const OffloadReport replayed = replay_trace(trace, placement, requests,
                                                cfg, 0.0, horizon, 3000, 31);
    const OffloadReport sampled =
        simulate_union(make_scenario(m, placement, requests, cfg, 3000, 32));
    CHECK(std::abs(replayed.mean_ratio - sampled.mean_ratio) <=
          2.0 * combined_stderr(replayed, sampled) + 0.01);
  }
  SUBCASE("greedy placement beats popular on a synthetic trace") {
    const int n_users = 5;
    const SystemConfig cfg = make_config(n_users, 8, 2);
    Rng rng = substream(33, "trace-strategies");
    const MobilityModel truth = sample_mobility(
        n_users, kDefaultInterContactSpec, kDefaultContactSpec, rng);
    const double horizon = 3e5;
    ContactTrace trace;
    trace.n_users = n_users;
    for (int i = 0; i < n_users; ++i) {
      for (int j = i + 1; j < n_users; ++j) {
        const PairTimeline t =
            sample_pair_timeline(truth.pair(i, j), horizon, rng);
        for (const auto& iv : t.intervals) {
          if (iv.in_contact) trace.records.push_back({i, j, iv.start, iv.end});
        }
      }
    }
    const RequestModel requests = zipf_requests(n_users, 8, 0.7);
    const TraceFit fit = fit_from_trace(trace, 0.0, horizon);
    const CachePlacement greedy =
        greedy_place(fit.model, requests, cfg).placement;
    const CachePlacement popular = popular_place(requests, cfg);
    const OffloadReport greedy_report = replay_trace(
        trace, greedy, requests, cfg, 0.0, horizon, 2000, 41);
    const OffloadReport popular_report = replay_trace(
        trace, popular, requests, cfg, 0.0, horizon, 2000, 41);
    CHECK(greedy_report.mean_ratio +
              2.0 * combined_stderr(greedy_report, popular_report) >=
          popular_report.mean_ratio);
    MESSAGE("trace replay: greedy=", greedy_report.mean_ratio,
            " popular=", popular_report.mean_ratio);
  }
}

TEST_CASE("adding a cached copy never hurts the simulated exact ratio") {
  const int n_users = 4;
  const SystemConfig cfg = make_config(n_users, 3, 1);
  Rng rng = substream(51, "monotone");
  const MobilityModel m = sample_mobility(n_users, kDefaultInterContactSpec,
                                          kDefaultContactSpec, rng);
  const RequestModel requests = zipf_requests(n_users, 3, 0.8);
  CachePlacement placement(n_users, 3);
  placement.set(1, 0, true);
  const OffloadReport before =
      simulate_union(make_scenario(m, placement, requests, cfg, 6000, 61));
  for (const auto& [user, file] :
       std::vector<std::pair<int, int>>{{2, 0}, {0, 1}, {3, 2}}) {
    CachePlacement bigger = placement;
    bigger.set(user, file, true);
    const OffloadReport after =
        simulate_union(make_scenario(m, bigger, requests, cfg, 6000, 61));
    CHECK(after.mean_ratio >=
          before.mean_ratio - 2.0 * combined_stderr(before, after));
  }
}

TEST_CASE("offload report serializes to CSV") {
  OffloadReport report;
  report.mean_ratio = 0.5;
  report.std_error = 0.01;
  report.per_user_ratio = {0.4, 0.6};
  report.n_samples = 200;
  report.mode = "union_time";
  const std::string csv = report.to_csv();
  CHECK(csv.find("# mode=union_time") != std::string::npos);
  CHECK(csv.find("metric,value,stderr,n") != std::string::npos);
  CHECK(csv.find("mean_ratio,0.5,0.01,200") != std::string::npos);
  CHECK(csv.find("per_user_0,0.4,,100") != std::string::npos);
}
