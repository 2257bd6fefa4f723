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

#ifndef D2DCACHE_CORE_HPP_
#define D2DCACHE_CORE_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace d2dcache {

/// Exponential rates of one user pair's alternating contact process.
/// Mean contact duration is 1/contact_rate, mean inter-contact duration is
/// 1/intercontact_rate. Pairs that never meet use the convention
/// (contact_rate = +inf, intercontact_rate = 0).
struct PairParams {
  double contact_rate = std::numeric_limits<double>::infinity();
  double intercontact_rate = 0.0;

  static PairParams no_contact() { return PairParams{}; }

  bool has_contact() const {
    return std::isfinite(contact_rate) && intercontact_rate > 0.0;
  }

  void validate() const {
    const bool none = std::isinf(contact_rate) && intercontact_rate == 0.0;
    const bool live = contact_rate > 0.0 && std::isfinite(contact_rate) &&
                      intercontact_rate > 0.0 &&
                      std::isfinite(intercontact_rate);
    if (!none && !live) {
      throw std::invalid_argument(
          "PairParams: rates must both be positive and finite, or exactly "
          "(inf, 0) for a pair without contacts");
    }
  }
};

/// Symmetric matrix of pairwise contact-process parameters. The diagonal is
/// unused; all pairs start in the no-contact state.
class MobilityModel {
 public:
  explicit MobilityModel(int n_users)
      : n_users_(n_users), params_(static_cast<size_t>(n_users) * n_users) {
    if (n_users < 1) throw std::invalid_argument("MobilityModel: n_users < 1");
  }

  int n_users() const { return n_users_; }

  const PairParams& pair(int i, int j) const {
    check_pair(i, j);
    return params_[static_cast<size_t>(i) * n_users_ + j];
  }

  void set_pair(int i, int j, const PairParams& p) {
    check_pair(i, j);
    p.validate();
    params_[static_cast<size_t>(i) * n_users_ + j] = p;
    params_[static_cast<size_t>(j) * n_users_ + i] = p;
  }

 private:
  void check_pair(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_users_ || j >= n_users_ || i == j) {
      throw std::out_of_range("MobilityModel: bad user pair");
    }
  }

  int n_users_;
  std::vector<PairParams> params_;
};

/// Global system scalars: file size, per-user cache size, link rate and the
/// delivery deadline, plus library and population sizes.
struct SystemConfig {
  double file_size = 0.0;   // bytes
  double cache_size = 0.0;  // bytes
  double rate = 0.0;        // bytes per second
  double deadline = 0.0;    // seconds
  int n_files = 0;
  int n_users = 0;

  int cache_slots() const {
    return static_cast<int>(std::floor(cache_size / file_size));
  }

  void validate() const {
    if (n_files < 1 || n_users < 1) {
      throw std::invalid_argument("SystemConfig: n_files and n_users must be >= 1");
    }
    if (!(file_size > 0.0) || !(cache_size > 0.0) || !(rate > 0.0) ||
        !(deadline > 0.0)) {
      throw std::invalid_argument("SystemConfig: sizes, rate and deadline must be positive");
    }
    if (!(deadline > file_size / rate)) {
      throw std::invalid_argument(
          "SystemConfig: deadline must exceed the single-file download time file_size/rate");
    }
    if (cache_slots() < 1) {
      throw std::invalid_argument("SystemConfig: cache must hold at least one file");
    }
  }
};

/// Per-user per-file request probabilities; each row is a distribution.
class RequestModel {
 public:
  RequestModel(int n_users, int n_files, std::vector<double> probs)
      : n_users_(n_users), n_files_(n_files), probs_(std::move(probs)) {
    if (n_users < 1 || n_files < 1 ||
        probs_.size() != static_cast<size_t>(n_users) * n_files) {
      throw std::invalid_argument("RequestModel: dimension mismatch");
    }
    for (int i = 0; i < n_users_; ++i) {
      double row = 0.0;
      for (int f = 0; f < n_files_; ++f) {
        const double p = prob(i, f);
        if (p < 0.0) throw std::invalid_argument("RequestModel: negative probability");
        row += p;
      }
      if (std::abs(row - 1.0) > 1e-12) {
        throw std::invalid_argument("RequestModel: row does not sum to 1");
      }
    }
  }

  int n_users() const { return n_users_; }
  int n_files() const { return n_files_; }

  double prob(int user, int file) const {
    return probs_[static_cast<size_t>(user) * n_files_ + file];
  }

 private:
  int n_users_;
  int n_files_;
  std::vector<double> probs_;
};

/// Binary user-by-file caching matrix, equivalently a subset of the ground
/// set of (user, file) placement elements.
class CachePlacement {
 public:
  CachePlacement(int n_users, int n_files)
      : n_users_(n_users),
        n_files_(n_files),
        cached_(static_cast<size_t>(n_users) * n_files, 0) {
    if (n_users < 1 || n_files < 1) {
      throw std::invalid_argument("CachePlacement: dimensions must be >= 1");
    }
  }

  int n_users() const { return n_users_; }
  int n_files() const { return n_files_; }

  bool caches(int user, int file) const {
    return cached_[index(user, file)] != 0;
  }

  void set(int user, int file, bool value) {
    cached_[index(user, file)] = value ? 1 : 0;
  }

  int user_count(int user) const {
    int total = 0;
    for (int f = 0; f < n_files_; ++f) total += caches(user, f) ? 1 : 0;
    return total;
  }

  std::vector<int> cachers_of(int file, int excluding_user = -1) const {
    std::vector<int> users;
    for (int j = 0; j < n_users_; ++j) {
      if (j != excluding_user && caches(j, file)) users.push_back(j);
    }
    return users;
  }

  bool satisfies_capacity(int slots_per_user) const {
    for (int j = 0; j < n_users_; ++j) {
      if (user_count(j) > slots_per_user) return false;
    }
    return true;
  }

  friend bool operator==(const CachePlacement& a, const CachePlacement& b) {
    return a.n_users_ == b.n_users_ && a.n_files_ == b.n_files_ &&
           a.cached_ == b.cached_;
  }

 private:
  size_t index(int user, int file) const {
    if (user < 0 || file < 0 || user >= n_users_ || file >= n_files_) {
      throw std::out_of_range("CachePlacement: bad (user, file)");
    }
    return static_cast<size_t>(user) * n_files_ + file;
  }

  int n_users_;
  int n_files_;
  std::vector<uint8_t> cached_;
};

}  // namespace d2dcache

#endif  // D2DCACHE_CORE_HPP_
