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

#include "hetanon/graph.hpp"

#include <algorithm>

#include "hetanon/common.hpp"

namespace hetanon {

namespace {

void erase_value(std::vector<std::uint32_t>& v, std::uint32_t x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it != v.end()) {
    *it = v.back();
    v.pop_back();
  }
}

std::uint32_t index_in(std::span<const UserId> users, UserId id) {
  auto it = std::lower_bound(users.begin(), users.end(), id);
  if (it == users.end() || *it != id) {
    throw NotFoundError("edge endpoint " + std::to_string(id.value) + " is not a user");
  }
  return static_cast<std::uint32_t>(it - users.begin());
}

}  // namespace

DiGraph::DiGraph(std::size_t nodes) : out_(nodes), in_(nodes) {}

DiGraph::DiGraph(std::size_t nodes, std::span<const NodePair> edges) : DiGraph(nodes) {
  keys_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= nodes || v >= nodes) throw Error("edge endpoint out of range");
    if (u == v) throw Error("self-loop on node " + std::to_string(u));
    if (!add_edge(u, v)) throw Error("duplicate edge");
  }
}

bool DiGraph::add_edge(std::uint32_t from, std::uint32_t to) {
  if (from == to) return false;
  if (!keys_.insert(key(from, to)).second) return false;
  out_[from].push_back(to);
  in_[to].push_back(from);
  return true;
}

bool DiGraph::remove_edge(std::uint32_t from, std::uint32_t to) {
  if (keys_.erase(key(from, to)) == 0) return false;
  erase_value(out_[from], to);
  erase_value(in_[to], from);
  return true;
}

std::vector<std::size_t> DiGraph::degrees(Direction d) const {
  std::vector<std::size_t> deg(node_count());
  for (std::uint32_t v = 0; v < node_count(); ++v) {
    deg[v] = d == Direction::out ? out_degree(v) : in_degree(v);
  }
  return deg;
}

std::vector<NodePair> DiGraph::edges() const {
  std::vector<NodePair> result;
  result.reserve(edge_count());
  for (std::uint32_t u = 0; u < node_count(); ++u) {
    for (std::uint32_t v : out_[u]) result.emplace_back(u, v);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::size_t> degree_sequence(const SocialNetwork& network, Direction direction) {
  std::vector<std::size_t> deg(network.size(), 0);
  for (const Edge& e : network.edges) {
    ++deg[network.index_of(direction == Direction::out ? e.from : e.to)];
  }
  return deg;
}

DiGraph to_digraph(std::span<const UserId> users, std::span<const Edge> edges) {
  std::vector<NodePair> pairs;
  pairs.reserve(edges.size());
  for (const Edge& e : edges) pairs.emplace_back(index_in(users, e.from), index_in(users, e.to));
  return DiGraph(users.size(), pairs);
}

DiGraph to_digraph(const SocialNetwork& network) {
  return to_digraph(network.users, network.edges);
}

Adjacency Adjacency::build(std::span<const UserId> users, std::span<const Edge> edges) {
  Adjacency adj;
  adj.followees.resize(users.size());
  adj.followers.resize(users.size());
  for (const Edge& e : edges) {
    std::uint32_t u = index_in(users, e.from);
    std::uint32_t v = index_in(users, e.to);
    adj.followees[u].push_back(v);
    adj.followers[v].push_back(u);
  }
  for (auto& l : adj.followees) std::sort(l.begin(), l.end());
  for (auto& l : adj.followers) std::sort(l.begin(), l.end());
  return adj;
}

}  // namespace hetanon
