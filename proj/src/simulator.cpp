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

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "d2dcache/csvio.hpp"

namespace d2dcache {

namespace {

int sample_file(const RequestModel& requests, int user, Rng& rng) {
  double u = uniform01(rng);
  for (int f = 0; f < requests.n_files(); ++f) {
    u -= requests.prob(user, f);
    if (u < 0.0) return f;
  }
  return requests.n_files() - 1;
}

// Total measure of the union of [start, end) spans.
double union_measure(std::vector<std::pair<double, double>>& spans) {
  std::sort(spans.begin(), spans.end());
  double total = 0.0;
  double covered_until = -std::numeric_limits<double>::infinity();
  for (const auto& [start, end] : spans) {
    if (start > covered_until) {
      total += end - start;
      covered_until = end;
    } else if (end > covered_until) {
      total += end - covered_until;
      covered_until = end;
    }
  }
  return total;
}

OffloadReport report_from_scores(const std::vector<std::vector<double>>& scores,
                                 const std::string& mode) {
  OffloadReport report;
  report.mode = mode;
  const int n_users = static_cast<int>(scores.size());
  report.per_user_ratio.resize(n_users, 0.0);
  double variance_of_mean = 0.0;
  for (int i = 0; i < n_users; ++i) {
    const auto& user_scores = scores[i];
    const long n = static_cast<long>(user_scores.size());
    report.n_samples += n;
    double mean = 0.0;
    for (const double s : user_scores) mean += s;
    mean /= static_cast<double>(n);
    report.per_user_ratio[i] = mean;
    report.mean_ratio += mean;
    if (n > 1) {
      double ss = 0.0;
      for (const double s : user_scores) ss += (s - mean) * (s - mean);
      const double sample_var = ss / static_cast<double>(n - 1);
      variance_of_mean += sample_var / static_cast<double>(n);
    }
  }
  report.mean_ratio /= n_users;
  report.std_error = std::sqrt(variance_of_mean) / n_users;
  return report;
}

}  // namespace

void SimScenario::validate() const {
  cfg.validate();
  if (mobility.n_users() != cfg.n_users ||
      placement.n_users() != cfg.n_users ||
      placement.n_files() != cfg.n_files ||
      requests.n_users() != cfg.n_users ||
      requests.n_files() != cfg.n_files) {
    throw std::invalid_argument("SimScenario: dimension mismatch");
  }
  if (n_requests_per_user < 1) {
    throw std::invalid_argument("SimScenario: n_requests_per_user must be >= 1");
  }
  if (mode == SimMode::kResourceLimited && resource_blocks < 1) {
    throw std::invalid_argument("SimScenario: resource_blocks must be >= 1");
  }
}

std::string OffloadReport::to_csv() const {
  std::ostringstream out;
  out << "# mode=" << mode << "\n";
  out << "metric,value,stderr,n\n";
  out << "mean_ratio," << format_float(mean_ratio) << ","
      << format_float(std_error) << "," << n_samples << "\n";
  for (size_t i = 0; i < per_user_ratio.size(); ++i) {
    out << "per_user_" << i << "," << format_float(per_user_ratio[i]) << ",,"
        << n_samples / per_user_ratio.size() << "\n";
  }
  return out.str();
}

OffloadReport simulate_union(const SimScenario& s) {
  s.validate();
  if (s.mode != SimMode::kUnionTime) {
    throw std::invalid_argument("simulate_union: scenario is not in union-time mode");
  }
  const double deadline = s.cfg.deadline;
  std::vector<std::vector<double>> scores(s.cfg.n_users);
  std::vector<std::pair<double, double>> spans;
  for (int i = 0; i < s.cfg.n_users; ++i) {
    Rng rng = substream(s.seed, "union/user/" + std::to_string(i));
    scores[i].reserve(s.n_requests_per_user);
    for (int r = 0; r < s.n_requests_per_user; ++r) {
      const int f = sample_file(s.requests, i, rng);
      if (s.placement.caches(i, f)) {
        scores[i].push_back(1.0);
        continue;
      }
      spans.clear();
      for (const int j : s.placement.cachers_of(f, i)) {
        const PairTimeline timeline =
            sample_pair_timeline(s.mobility.pair(i, j), deadline, rng);
        for (const auto& iv : timeline.intervals) {
          if (iv.in_contact) spans.emplace_back(iv.start, iv.end);
        }
      }
      const double comm_time = union_measure(spans);
      scores[i].push_back(
          std::min(s.cfg.rate * comm_time / s.cfg.file_size, 1.0));
    }
  }
  return report_from_scores(scores, "union_time");
}

namespace {

struct ContactChange {
  double time;
  int user_a;
  int user_b;
  bool now_in_contact;
};

}  // namespace

OffloadReport simulate_resource_limited(const SimScenario& s) {
  s.validate();
  if (s.mode != SimMode::kResourceLimited) {
    throw std::invalid_argument(
        "simulate_resource_limited: scenario is not in resource-limited mode");
  }
  const int n_users = s.cfg.n_users;
  const double deadline = s.cfg.deadline;
  const double file_size = s.cfg.file_size;
  const double horizon = s.n_requests_per_user * deadline;

  // Shared pair timelines over the whole horizon, as contact-change events.
  std::vector<uint8_t> in_contact(static_cast<size_t>(n_users) * n_users, 0);
  auto contact_at = [&](int a, int b) -> uint8_t& {
    return in_contact[static_cast<size_t>(a) * n_users + b];
  };
  std::vector<ContactChange> changes;
  for (int i = 0; i < n_users; ++i) {
    for (int j = i + 1; j < n_users; ++j) {
      const PairParams& p = s.mobility.pair(i, j);
      if (!p.has_contact()) continue;
      Rng rng = substream(s.seed, "pair/" + std::to_string(i) + "/" +
                                      std::to_string(j));
      const PairTimeline timeline = sample_pair_timeline(p, horizon, rng);
      contact_at(i, j) = contact_at(j, i) =
          timeline.intervals.front().in_contact ? 1 : 0;
      for (size_t k = 1; k < timeline.intervals.size(); ++k) {
        const auto& iv = timeline.intervals[k];
        changes.push_back({iv.start, i, j, iv.in_contact});
      }
    }
  }
  std::sort(changes.begin(), changes.end(),
            [](const ContactChange& a, const ContactChange& b) {
              if (a.time != b.time) return a.time < b.time;
              if (a.user_a != b.user_a) return a.user_a < b.user_a;
              return a.user_b < b.user_b;
            });

  // Pre-drawn request files, one substream per user.
  std::vector<std::vector<int>> request_files(n_users);
  for (int i = 0; i < n_users; ++i) {
    Rng rng = substream(s.seed, "requests/user/" + std::to_string(i));
    request_files[i].reserve(s.n_requests_per_user);
    for (int r = 0; r < s.n_requests_per_user; ++r) {
      request_files[i].push_back(sample_file(s.requests, i, rng));
    }
  }
  Rng link_rng = substream(s.seed, "links");
  auto pick_index = [&link_rng](size_t size) {
    return std::min(static_cast<size_t>(uniform01(link_rng) * size), size - 1);
  };

  std::vector<int> current_file(n_users);
  std::vector<double> delivered(n_users, 0.0);
  std::vector<uint8_t> self_cached(n_users, 0);
  std::vector<uint8_t> finished(n_users, 0);
  std::vector<int> donor_of(n_users, -1);  // active link per receiver
  std::vector<std::vector<double>> scores(n_users);

  auto start_request = [&](int i, int period) {
    current_file[i] = request_files[i][period];
    delivered[i] = 0.0;
    self_cached[i] = s.placement.caches(i, current_file[i]) ? 1 : 0;
    finished[i] = self_cached[i];
    donor_of[i] = -1;
  };
  for (int i = 0; i < n_users; ++i) start_request(i, 0);

  std::priority_queue<double, std::vector<double>, std::greater<>> rechecks;
  auto rebuild_links = [&](double now, double period_end) {
    std::fill(donor_of.begin(), donor_of.end(), -1);
    // Donors choose one interested requester each, then each requester keeps
    // one of the donors that chose it; finally the global block budget is
    // enforced by random subsampling.
    std::vector<std::vector<int>> interested(n_users);
    for (int r = 0; r < n_users; ++r) {
      if (finished[r] || self_cached[r]) continue;
      for (int d = 0; d < n_users; ++d) {
        if (d == r || !s.placement.caches(d, current_file[r])) continue;
        if (contact_at(r, d)) interested[d].push_back(r);
      }
    }
    std::vector<std::vector<int>> offers(n_users);
    for (int d = 0; d < n_users; ++d) {
      if (interested[d].empty()) continue;
      offers[interested[d][pick_index(interested[d].size())]].push_back(d);
    }
    std::vector<std::pair<int, int>> links;  // (receiver, donor)
    for (int r = 0; r < n_users; ++r) {
      if (offers[r].empty()) continue;
      links.emplace_back(r, offers[r][pick_index(offers[r].size())]);
    }
    if (links.size() > static_cast<size_t>(s.resource_blocks)) {
      for (int k = 0; k < s.resource_blocks; ++k) {
        const size_t pick =
            k + pick_index(links.size() - static_cast<size_t>(k));
        std::swap(links[k], links[pick]);
      }
      links.resize(s.resource_blocks);
      std::sort(links.begin(), links.end());
    }
    for (const auto& [r, d] : links) {
      donor_of[r] = d;
      const double completion = now + (file_size - delivered[r]) / s.cfg.rate;
      if (completion < period_end) rechecks.push(completion);
    }
  };

  size_t change_idx = 0;
  int period = 0;
  double now = 0.0;
  double period_end = deadline;
  rebuild_links(now, period_end);
  while (period < s.n_requests_per_user) {
    double next = period_end;
    if (change_idx < changes.size()) {
      next = std::min(next, changes[change_idx].time);
    }
    while (!rechecks.empty() && rechecks.top() <= now) rechecks.pop();
    if (!rechecks.empty()) next = std::min(next, rechecks.top());

    // Accrue delivered bytes on active links over [now, next].
    const double elapsed = next - now;
    if (elapsed > 0.0) {
      for (int r = 0; r < n_users; ++r) {
        if (donor_of[r] < 0) continue;
        delivered[r] =
            std::min(delivered[r] + s.cfg.rate * elapsed, file_size);
        if (delivered[r] >= file_size * (1.0 - 1e-12)) finished[r] = 1;
      }
    }
    now = next;
    while (change_idx < changes.size() && changes[change_idx].time == now) {
      const ContactChange& c = changes[change_idx++];
      contact_at(c.user_a, c.user_b) = contact_at(c.user_b, c.user_a) =
          c.now_in_contact ? 1 : 0;
    }
    while (!rechecks.empty() && rechecks.top() <= now) rechecks.pop();
    if (now == period_end) {
      for (int i = 0; i < n_users; ++i) {
        scores[i].push_back(self_cached[i]
                                ? 1.0
                                : std::min(delivered[i] / file_size, 1.0));
      }
      ++period;
      if (period == s.n_requests_per_user) break;
      period_end = (period + 1) * deadline;
      for (int i = 0; i < n_users; ++i) start_request(i, period);
    }
    rebuild_links(now, period_end);
  }
  return report_from_scores(scores, "resource_limited");
}

OffloadReport replay_trace(const ContactTrace& trace,
                           const CachePlacement& placement,
                           const RequestModel& requests,
                           const SystemConfig& cfg, double window_start,
                           double window_end, int n_requests_per_user,
                           uint64_t seed) {
  cfg.validate();
  trace.validate();
  if (placement.n_users() != cfg.n_users ||
      placement.n_files() != cfg.n_files ||
      requests.n_users() != cfg.n_users ||
      requests.n_files() != cfg.n_files || trace.n_users > cfg.n_users) {
    throw std::invalid_argument("replay_trace: dimension mismatch");
  }
  if (!(window_end > window_start)) {
    throw std::invalid_argument("replay_trace: empty window");
  }
  if (window_end - window_start < cfg.deadline) {
    throw std::invalid_argument("replay_trace: window shorter than the deadline");
  }
  if (n_requests_per_user < 1) {
    throw std::invalid_argument("replay_trace: n_requests_per_user must be >= 1");
  }

  // Merged contact intervals per pair, indexed once.
  std::vector<std::vector<std::pair<double, double>>> contacts(
      static_cast<size_t>(cfg.n_users) * cfg.n_users);
  for (int i = 0; i < cfg.n_users; ++i) {
    for (int j = i + 1; j < cfg.n_users; ++j) {
      auto merged =
          merged_pair_contacts(trace, i, j, window_start, window_end);
      contacts[static_cast<size_t>(i) * cfg.n_users + j] = merged;
      contacts[static_cast<size_t>(j) * cfg.n_users + i] = std::move(merged);
    }
  }

  const double epoch_span = window_end - cfg.deadline - window_start;
  std::vector<std::vector<double>> scores(cfg.n_users);
  std::vector<std::pair<double, double>> spans;
  for (int i = 0; i < cfg.n_users; ++i) {
    Rng rng = substream(seed, "replay/user/" + std::to_string(i));
    scores[i].reserve(n_requests_per_user);
    for (int r = 0; r < n_requests_per_user; ++r) {
      const double epoch = window_start + uniform01(rng) * epoch_span;
      const int f = sample_file(requests, i, rng);
      if (placement.caches(i, f)) {
        scores[i].push_back(1.0);
        continue;
      }
      spans.clear();
      for (const int j : placement.cachers_of(f, i)) {
        for (const auto& [start, end] :
             contacts[static_cast<size_t>(i) * cfg.n_users + j]) {
          const double lo = std::max(start, epoch);
          const double hi = std::min(end, epoch + cfg.deadline);
          if (lo < hi) spans.emplace_back(lo, hi);
        }
      }
      const double comm_time = union_measure(spans);
      scores[i].push_back(
          std::min(cfg.rate * comm_time / cfg.file_size, 1.0));
    }
  }
  return report_from_scores(scores, "trace_replay");
}

}  // namespace d2dcache
