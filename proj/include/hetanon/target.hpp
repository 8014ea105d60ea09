// Copyright 2026 The Hetanon Authors.
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
// Simulated target platform: the un-anonymized network reachable only via a
// keyword search engine and a per-user API, with call accounting.

#ifndef HETANON_TARGET_HPP_
#define HETANON_TARGET_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hetanon/common.hpp"
#include "hetanon/graph.hpp"
#include "hetanon/types.hpp"

namespace hetanon::target {

struct SearchQuery {
  // Sorted, unique, non-empty.
  std::vector<std::string> words;

  // Throws ConfigError when no words are given.
  static SearchQuery of(std::vector<std::string> words);
  friend bool operator==(const SearchQuery&, const SearchQuery&) = default;
};

enum class MatchMode { all_words, any_word };

std::string_view to_string(MatchMode m);
MatchMode parse_match_mode(std::string_view name);

struct DegreePair {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t total() const { return in + out; }
  friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

struct NeighborSample {
  std::vector<UserId> followers;
  std::vector<UserId> followees;
};

struct BudgetTotals {
  std::uint64_t search_calls = 0;
  std::uint64_t post_calls = 0;
  std::uint64_t neighbor_calls = 0;
  std::uint64_t total() const { return search_calls + post_calls + neighbor_calls; }
  BudgetTotals& operator+=(const BudgetTotals& o);
  friend bool operator==(const BudgetTotals&, const BudgetTotals&) = default;
};

struct BudgetCaps {
  std::optional<std::uint64_t> search_calls;
  std::optional<std::uint64_t> post_calls;
  std::optional<std::uint64_t> neighbor_calls;
};

inline constexpr std::size_t kDefaultSearchLimit = 100;

// Immutable index over a network. Safe to share between threads.
class TargetNetwork {
 public:
  explicit TargetNetwork(SocialNetwork network, MatchMode mode = MatchMode::any_word);

  const SocialNetwork& network() const { return network_; }
  MatchMode mode() const { return mode_; }

  std::vector<UserId> search(const SearchQuery& q, std::size_t limit) const;
  // Throws NotFoundError.
  std::vector<Post> recent_posts(UserId user, std::size_t theta) const;
  NeighborSample neighbors(UserId user, std::size_t sample_size, Rng& rng) const;
  DegreePair degree_of(UserId user) const;

 private:
  SocialNetwork network_;
  MatchMode mode_;
  Adjacency adjacency_;
  std::vector<std::uint32_t> post_author_;
  std::vector<std::uint32_t> post_offset_;
  // word -> ascending global post ids
  std::unordered_map<std::string, std::vector<std::uint32_t>> index_;
};

// Accounted access to a TargetNetwork. Counters are atomic, so one client can
// serve several worker threads.
class TargetClient {
 public:
  explicit TargetClient(const TargetNetwork& target, BudgetCaps caps = {});

  // Throw RateLimitError once a cap is reached.
  std::vector<UserId> search(const SearchQuery& q, std::size_t limit = kDefaultSearchLimit);
  std::vector<Post> recent_posts(UserId user, std::size_t theta);
  NeighborSample neighbors(UserId user, std::size_t sample_size, Rng& rng);
  DegreePair degree_of(UserId user);

  BudgetTotals totals() const;
  const TargetNetwork& target() const { return *target_; }

 private:
  void charge(std::atomic<std::uint64_t>& counter, const std::optional<std::uint64_t>& cap,
              const char* what);

  const TargetNetwork* target_;
  BudgetCaps caps_;
  std::atomic<std::uint64_t> search_calls_{0};
  std::atomic<std::uint64_t> post_calls_{0};
  std::atomic<std::uint64_t> neighbor_calls_{0};
};

}  // namespace hetanon::target

#endif  // HETANON_TARGET_HPP_
