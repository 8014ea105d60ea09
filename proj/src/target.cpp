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
#include "hetanon/target.hpp"

#include <algorithm>
#include <limits>

namespace hetanon::target {

namespace {

std::vector<UserId> sample_ids(const std::vector<std::uint32_t>& pool, std::size_t count,
                               const std::vector<UserId>& users, Rng& rng) {
  std::vector<std::uint32_t> items = pool;
  const std::size_t take = std::min(count, items.size());
  if (take == items.size()) {
    std::vector<UserId> all;
    all.reserve(take);
    for (std::uint32_t v : items) all.push_back(users[v]);
    return all;
  }
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, items.size() - i));
    std::swap(items[i], items[j]);
  }
  std::vector<UserId> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(users[items[i]]);
  return out;
}

}  // namespace

SearchQuery SearchQuery::of(std::vector<std::string> words) {
  if (words.empty()) throw ConfigError("a search query needs at least one word");
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return SearchQuery{std::move(words)};
}

std::string_view to_string(MatchMode m) { return m == MatchMode::any_word ? "any" : "all"; }

MatchMode parse_match_mode(std::string_view name) {
  if (name == "all") return MatchMode::all_words;
  if (name == "any") return MatchMode::any_word;
  throw ConfigError("unknown match mode '" + std::string(name) + "' (expected all or any)");
}

BudgetTotals& BudgetTotals::operator+=(const BudgetTotals& o) {
  search_calls += o.search_calls;
  post_calls += o.post_calls;
  neighbor_calls += o.neighbor_calls;
  return *this;
}

TargetNetwork::TargetNetwork(SocialNetwork network, MatchMode mode)
    : network_(std::move(network)), mode_(mode) {
  network_.validate();
  adjacency_ = Adjacency::build(network_.users, network_.edges);
  post_offset_.push_back(0);
  for (std::size_t u = 0; u < network_.size(); ++u) {
    for (const Post& p : network_.posts[u]) {
      const auto id = static_cast<std::uint32_t>(post_author_.size());
      post_author_.push_back(static_cast<std::uint32_t>(u));
      for (const auto& tok : p.tokens) {
        auto& list = index_[tok];
        if (list.empty() || list.back() != id) list.push_back(id);
      }
    }
    post_offset_.push_back(static_cast<std::uint32_t>(post_author_.size()));
  }
}

std::vector<UserId> TargetNetwork::search(const SearchQuery& q, std::size_t limit) const {
  std::vector<std::uint32_t> posts;
  if (mode_ == MatchMode::all_words) {
    std::vector<const std::vector<std::uint32_t>*> lists;
    for (const auto& w : q.words) {
      auto it = index_.find(w);
      if (it == index_.end()) return {};
      lists.push_back(&it->second);
    }
    if (lists.empty()) return {};
    std::sort(lists.begin(), lists.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
    posts = *lists.front();
    std::vector<std::uint32_t> next;
    for (std::size_t i = 1; i < lists.size() && !posts.empty(); ++i) {
      next.clear();
      std::set_intersection(posts.begin(), posts.end(), lists[i]->begin(), lists[i]->end(),
                            std::back_inserter(next));
      posts.swap(next);
    }
  } else {
    for (const auto& w : q.words) {
      auto it = index_.find(w);
      if (it != index_.end()) posts.insert(posts.end(), it->second.begin(), it->second.end());
    }
    std::sort(posts.begin(), posts.end());
    posts.erase(std::unique(posts.begin(), posts.end()), posts.end());
  }
  // Posts are grouped by author, so counting runs gives matches per user.
  std::vector<std::pair<std::size_t, std::uint32_t>> hits;
  for (std::size_t i = 0; i < posts.size();) {
    const std::uint32_t author = post_author_[posts[i]];
    std::size_t j = i;
    while (j < posts.size() && post_author_[posts[j]] == author) ++j;
    hits.emplace_back(j - i, author);
    i = j;
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (hits.size() > limit) hits.resize(limit);
  std::vector<UserId> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(network_.users[h.second]);
  return out;
}

std::vector<Post> TargetNetwork::recent_posts(UserId user, std::size_t theta) const {
  const auto& posts = network_.posts[network_.index_of(user)];
  const std::size_t take = std::min(theta, posts.size());
  return std::vector<Post>(posts.end() - static_cast<std::ptrdiff_t>(take), posts.end());
}

NeighborSample TargetNetwork::neighbors(UserId user, std::size_t sample_size, Rng& rng) const {
  const std::size_t v = network_.index_of(user);
  NeighborSample out;
  out.followers = sample_ids(adjacency_.followers[v], sample_size, network_.users, rng);
  out.followees = sample_ids(adjacency_.followees[v], sample_size, network_.users, rng);
  return out;
}

DegreePair TargetNetwork::degree_of(UserId user) const {
  const std::size_t v = network_.index_of(user);
  return DegreePair{adjacency_.followers[v].size(), adjacency_.followees[v].size()};
}

TargetClient::TargetClient(const TargetNetwork& target, BudgetCaps caps)
    : target_(&target), caps_(caps) {}

void TargetClient::charge(std::atomic<std::uint64_t>& counter,
                          const std::optional<std::uint64_t>& cap, const char* what) {
  const std::uint64_t before = counter.fetch_add(1, std::memory_order_relaxed);
  if (cap && before >= *cap) {
    counter.fetch_sub(1, std::memory_order_relaxed);
    throw RateLimitError(std::string(what) + " budget of " + std::to_string(*cap) +
                         " calls exhausted");
  }
}

std::vector<UserId> TargetClient::search(const SearchQuery& q, std::size_t limit) {
  charge(search_calls_, caps_.search_calls, "search");
  return target_->search(q, limit);
}

std::vector<Post> TargetClient::recent_posts(UserId user, std::size_t theta) {
  charge(post_calls_, caps_.post_calls, "post");
  return target_->recent_posts(user, theta);
}

NeighborSample TargetClient::neighbors(UserId user, std::size_t sample_size, Rng& rng) {
  charge(neighbor_calls_, caps_.neighbor_calls, "neighbor");
  return target_->neighbors(user, sample_size, rng);
}

DegreePair TargetClient::degree_of(UserId user) {
  charge(neighbor_calls_, caps_.neighbor_calls, "neighbor");
  return target_->degree_of(user);
}

BudgetTotals TargetClient::totals() const {
  return BudgetTotals{search_calls_.load(), post_calls_.load(), neighbor_calls_.load()};
}

}  // namespace hetanon::target
