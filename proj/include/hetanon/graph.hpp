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

#ifndef HETANON_GRAPH_HPP_
#define HETANON_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hetanon/types.hpp"

namespace hetanon {

enum class Direction { in, out };

using NodePair = std::pair<std::uint32_t, std::uint32_t>;

// Simple directed graph over dense node indices [0, n). Rejects self-loops
// and parallel edges.
class DiGraph {
 public:
  explicit DiGraph(std::size_t nodes = 0);
  // Throws Error on self-loops, duplicates or out-of-range endpoints.
  DiGraph(std::size_t nodes, std::span<const NodePair> edges);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return keys_.size(); }

  bool has_edge(std::uint32_t from, std::uint32_t to) const {
    return keys_.count(key(from, to)) != 0;
  }
  // Returns false (and leaves the graph unchanged) for self-loops or
  // existing edges.
  bool add_edge(std::uint32_t from, std::uint32_t to);
  bool remove_edge(std::uint32_t from, std::uint32_t to);

  std::size_t out_degree(std::uint32_t v) const { return out_[v].size(); }
  std::size_t in_degree(std::uint32_t v) const { return in_[v].size(); }
  // Unordered.
  const std::vector<std::uint32_t>& out_neighbors(std::uint32_t v) const { return out_[v]; }
  const std::vector<std::uint32_t>& in_neighbors(std::uint32_t v) const { return in_[v]; }

  std::vector<std::size_t> degrees(Direction d) const;
  // Ascending (from, to).
  std::vector<NodePair> edges() const;

 private:
  static std::uint64_t key(std::uint32_t from, std::uint32_t to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }

  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
  std::unordered_set<std::uint64_t> keys_;
};

// One degree per user in ascending UserId order.
std::vector<std::size_t> degree_sequence(const SocialNetwork& network, Direction direction);

// Node-index graph of a network, nodes in canonical (ascending id) order.
DiGraph to_digraph(const SocialNetwork& network);
DiGraph to_digraph(std::span<const UserId> users, std::span<const Edge> edges);

// Read-only sorted adjacency lists.
struct Adjacency {
  std::vector<std::vector<std::uint32_t>> followees;  // out-neighbors
  std::vector<std::vector<std::uint32_t>> followers;  // in-neighbors

  static Adjacency build(std::span<const UserId> users, std::span<const Edge> edges);
  std::size_t size() const { return followees.size(); }
  std::size_t total_degree(std::size_t v) const {
    return followees[v].size() + followers[v].size();
  }
};

}  // namespace hetanon

#endif  // HETANON_GRAPH_HPP_
