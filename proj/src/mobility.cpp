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

#include "d2dcache/mobility.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace d2dcache {

void ContactTrace::validate() const {
  for (const auto& r : records) {
    if (r.user_a < 0 || r.user_b < 0 || r.user_a >= n_users ||
        r.user_b >= n_users || r.user_a == r.user_b) {
      throw std::invalid_argument("ContactTrace: record with bad user ids");
    }
    if (!(r.t_start < r.t_end)) {
      throw std::invalid_argument("ContactTrace: record must have t_start < t_end");
    }
  }
}

double stationary_noncontact_prob(const PairParams& p) {
  p.validate();
  if (!p.has_contact()) return 1.0;
  return p.contact_rate / (p.contact_rate + p.intercontact_rate);
}

MobilityModel scale_speed(const MobilityModel& m, double factor) {
  if (!(factor > 0.0)) {
    throw std::invalid_argument("scale_speed: factor must be positive");
  }
  MobilityModel scaled(m.n_users());
  for (int i = 0; i < m.n_users(); ++i) {
    for (int j = i + 1; j < m.n_users(); ++j) {
      PairParams p = m.pair(i, j);
      if (p.has_contact()) {
        p.contact_rate *= factor;
        p.intercontact_rate *= factor;
      }
      scaled.set_pair(i, j, p);
    }
  }
  return scaled;
}

PairTimeline sample_pair_timeline(const PairParams& p, double horizon,
                                  Rng& rng) {
  p.validate();
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("sample_pair_timeline: horizon must be positive");
  }
  PairTimeline timeline;
  timeline.horizon = horizon;
  if (!p.has_contact()) {
    timeline.intervals.push_back({0.0, horizon, false});
    return timeline;
  }
  const double p_apart = stationary_noncontact_prob(p);
  bool in_contact = uniform01(rng) < 1.0 - p_apart;
  double t = 0.0;
  while (t < horizon) {
    const double rate = in_contact ? p.contact_rate : p.intercontact_rate;
    const double end = std::min(t + sample_exponential(rng, rate), horizon);
    timeline.intervals.push_back({t, end, in_contact});
    t = end;
    in_contact = !in_contact;
  }
  return timeline;
}

std::vector<std::pair<double, double>> merged_pair_contacts(
    const ContactTrace& trace, int user_a, int user_b, double window_start,
    double window_end) {
  std::vector<std::pair<double, double>> spans;
  for (const auto& r : trace.records) {
    if ((r.user_a == user_a && r.user_b == user_b) ||
        (r.user_a == user_b && r.user_b == user_a)) {
      spans.emplace_back(r.t_start, r.t_end);
    }
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [start, end] : spans) {
    if (!merged.empty() && start <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, end);
    } else {
      merged.emplace_back(start, end);
    }
  }
  std::vector<std::pair<double, double>> clipped;
  for (const auto& [start, end] : merged) {
    const double lo = std::max(start, window_start);
    const double hi = std::min(end, window_end);
    if (lo < hi) clipped.emplace_back(lo, hi);
  }
  return clipped;
}

TraceFit fit_from_trace(const ContactTrace& trace, double window_start,
                        double window_end) {
  trace.validate();
  if (trace.records.empty()) {
    throw std::invalid_argument("fit_from_trace: empty trace");
  }
  if (!(window_start < window_end)) {
    throw std::invalid_argument("fit_from_trace: window start must precede end");
  }
  TraceFit fit{MobilityModel(trace.n_users), {}};
  // Group record indices per unordered pair to avoid rescanning the trace
  // once per user pair.
  std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> spans;
  for (const auto& r : trace.records) {
    const auto key = std::minmax(r.user_a, r.user_b);
    spans[key].emplace_back(r.t_start, r.t_end);
  }
  for (auto& [key, pair_spans] : spans) {
    std::sort(pair_spans.begin(), pair_spans.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [start, end] : pair_spans) {
      if (!merged.empty() && start <= merged.back().second) {
        merged.back().second = std::max(merged.back().second, end);
      } else {
        merged.emplace_back(start, end);
      }
    }
    std::vector<std::pair<double, double>> clipped;
    for (const auto& [start, end] : merged) {
      const double lo = std::max(start, window_start);
      const double hi = std::min(end, window_end);
      if (lo < hi) clipped.emplace_back(lo, hi);
    }
    if (clipped.empty()) continue;  // no contact inside the window
    double contact_total = 0.0;
    for (const auto& [lo, hi] : clipped) contact_total += hi - lo;
    // Apart spans are the complement of the contact intervals within the
    // window; spans censored by the window edges count like the censored
    // contact intervals do.
    std::vector<double> gaps;
    if (clipped.front().first > window_start) {
      gaps.push_back(clipped.front().first - window_start);
    }
    for (size_t k = 1; k < clipped.size(); ++k) {
      gaps.push_back(clipped[k].first - clipped[k - 1].second);
    }
    if (clipped.back().second < window_end) {
      gaps.push_back(window_end - clipped.back().second);
    }
    double gap_total = 0.0;
    for (const double g : gaps) gap_total += g;
    if (gaps.empty() || !(gap_total > 0.0)) {
      // In contact for the entire window: the inter-contact rate cannot be
      // estimated, so the pair is reported rather than given a guessed rate.
      fit.pairs_without_gaps.push_back(
          {key.first, key.second, static_cast<int>(clipped.size())});
      continue;
    }
    const double mean_contact =
        contact_total / static_cast<double>(clipped.size());
    const double mean_gap = gap_total / static_cast<double>(gaps.size());
    fit.model.set_pair(key.first, key.second,
                       {1.0 / mean_contact, 1.0 / mean_gap});
  }
  return fit;
}

}  // namespace d2dcache
