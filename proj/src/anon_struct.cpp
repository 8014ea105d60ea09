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

#include "hetanon/anon_struct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

namespace hetanon::anon {

namespace {

constexpr std::size_t kKdegAttempts = 40;

std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Partial Fisher-Yates: the first `count` entries become a uniform sample
// without replacement.
template <typename T>
void sample_prefix(std::vector<T>& items, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count && i < items.size(); ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, items.size() - i));
    std::swap(items[i], items[j]);
  }
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  sample_prefix(items, items.size(), rng);
}

DiGraph remove_random_edges(const DiGraph& g, std::size_t count, Rng& rng) {
  auto edges = g.edges();
  sample_prefix(edges, count, rng);
  DiGraph out = g;
  for (std::size_t i = 0; i < count; ++i) out.remove_edge(edges[i].first, edges[i].second);
  return out;
}

// Raises entries of a k-anonymous target sequence so that the total grows by
// `want` while every value stays shared by >= k entries. When no combination
// of moves hits `want` exactly, overshoots by the smallest available move.
// Returns the amount added; 0 means no move was possible.
std::size_t raise_targets(std::vector<std::size_t>& target, std::size_t want, std::size_t k,
                          std::size_t cap, std::span<const std::uint32_t> preference) {
  std::size_t added = 0;
  while (added < want) {
    const std::size_t need = want - added;
    std::map<std::size_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t v : preference) groups[target[v]].push_back(v);

    struct Move {
      std::size_t value;
      std::size_t count;
    };
    std::optional<Move> under;
    std::optional<Move> over;
    auto consider = [&](std::size_t value, std::size_t m) {
      if (m <= need) {
        if (!under || m > under->count) under = Move{value, m};
      } else if (!over || m < over->count) {
        over = Move{value, m};
      }
    };
    for (const auto& [value, nodes] : groups) {
      if (value + 1 > cap) continue;
      const std::size_t g = nodes.size();
      const std::size_t lo = groups.count(value + 1) ? 1 : k;
      if (g >= k + lo) {
        const std::size_t hi = g - k;
        consider(value, need >= lo ? std::min(need, hi) : lo);
      }
      consider(value, g);
    }
    const std::optional<Move>& pick = under ? under : over;
    if (!pick) break;
    const auto& nodes = groups[pick->value];
    for (std::size_t i = 0; i < pick->count; ++i) ++target[nodes[i]];
    added += pick->count;
    if (!under) break;
  }
  return added;
}

std::size_t total(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

// Equalizes the out- and in-target totals (every edge adds one to each).
bool balance_targets(std::vector<std::size_t>& out_t, std::vector<std::size_t>& in_t, std::size_t k,
                     std::size_t cap, std::span<const std::uint32_t> out_pref,
                     std::span<const std::uint32_t> in_pref) {
  for (std::size_t iter = 0; iter < 4 * out_t.size() + 16; ++iter) {
    const std::size_t so = total(out_t);
    const std::size_t si = total(in_t);
    if (so == si) return true;
    const std::size_t added = so < si ? raise_targets(out_t, si - so, k, cap, out_pref)
                                      : raise_targets(in_t, so - si, k, cap, in_pref);
    if (added == 0) return false;
  }
  return false;
}

// Raises one random value group by one, keeping k-anonymity.
void relax_one_group(std::vector<std::size_t>& target, std::size_t cap, Rng& rng) {
  std::vector<std::size_t> values(target.begin(), target.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) return;
  const std::size_t v = values[uniform_index(rng, values.size())];
  if (v + 1 > cap) return;
  for (auto& t : target) {
    if (t == v) ++t;
  }
}

// Nodes in random order, then stably ordered by the opposite side's need so
// that raising a target prefers nodes that will not also need the other kind
// of edge.
std::vector<std::uint32_t> preference_order(const std::vector<long>& other_need, Rng& rng) {
  std::vector<std::uint32_t> order(other_need.size());
  std::iota(order.begin(), order.end(), 0u);
  shuffle(order, rng);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return other_need[a] < other_need[b];
  });
  return order;
}

// Greedy Kleitman-Wang style realization: the node with the largest
// remaining out-need links to the nodes with the largest in-need.
bool realize_additions(DiGraph& g, std::vector<long>& out_need, std::vector<long>& in_need,
                       const std::unordered_set<std::uint64_t>& forbidden,
                       std::span<const std::uint32_t> tiebreak_rank, std::size_t& additions) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> candidates;
  while (true) {
    std::uint32_t u = 0;
    long best = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (out_need[v] > best || (out_need[v] == best && best > 0 &&
                                 tiebreak_rank[v] < tiebreak_rank[u])) {
        best = out_need[v];
        u = v;
      }
    }
    if (best == 0) break;
    candidates.clear();
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v == u || in_need[v] <= 0 || g.has_edge(u, v) || forbidden.count(edge_key(u, v))) continue;
      candidates.push_back(v);
    }
    if (candidates.size() < static_cast<std::size_t>(best)) return false;
    std::partial_sort(candidates.begin(), candidates.begin() + best, candidates.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                        if (in_need[a] != in_need[b]) return in_need[a] > in_need[b];
                        if (out_need[a] != out_need[b]) return out_need[a] > out_need[b];
                        return tiebreak_rank[a] < tiebreak_rank[b];
                      });
    for (long i = 0; i < best; ++i) {
      g.add_edge(u, candidates[i]);
      --in_need[candidates[i]];
      ++additions;
    }
    out_need[u] = 0;
  }
  return std::all_of(in_need.begin(), in_need.end(), [](long x) { return x == 0; });
}

KDegreeResult kdeg_impl(const DiGraph& g, std::size_t k, std::uint64_t seed, bool allow_delete) {
  const std::size_t n = g.node_count();
  if (k == 0) throw ConfigError("k must be at least 1");
  if (k > n) {
    throw InfeasibleError("k=" + std::to_string(k) + " exceeds the number of users (" +
                          std::to_string(n) + ")");
  }
  if (k == 1) return KDegreeResult{g, 0, 0, 0};
  const std::size_t cap = n - 1;
  const auto out_deg = g.degrees(Direction::out);
  const auto in_deg = g.degrees(Direction::in);
  const auto base_out = anonymize_degree_sequence(out_deg, k, allow_delete);
  const auto base_in = anonymize_degree_sequence(in_deg, k, allow_delete);

  for (std::size_t attempt = 0; attempt < kKdegAttempts; ++attempt) {
    Rng rng(derive_seed(seed, {attempt}));
    auto out_t = base_out;
    auto in_t = base_in;
    for (std::size_t r = 0; r < attempt / 4; ++r) {
      relax_one_group(out_t, cap, rng);
      relax_one_group(in_t, cap, rng);
    }
    std::vector<long> out_gap(n), in_gap(n);
    for (std::size_t v = 0; v < n; ++v) {
      out_gap[v] = static_cast<long>(out_t[v]) - static_cast<long>(out_deg[v]);
      in_gap[v] = static_cast<long>(in_t[v]) - static_cast<long>(in_deg[v]);
    }
    const auto out_pref = preference_order(in_gap, rng);
    const auto in_pref = preference_order(out_gap, rng);
    if (!balance_targets(out_t, in_t, k, cap, out_pref, in_pref)) continue;

    std::vector<std::uint32_t> rank(n);
    {
      std::vector<std::uint32_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0u);
      shuffle(perm, rng);
      for (std::uint32_t i = 0; i < n; ++i) rank[perm[i]] = i;
    }

    KDegreeResult result{g, 0, 0, attempt + 1};
    DiGraph& h = result.graph;
    std::unordered_set<std::uint64_t> removed;
    if (allow_delete) {
      std::vector<long> out_excess(n), in_excess(n);
      for (std::uint32_t v = 0; v < n; ++v) {
        out_excess[v] = std::max(0L, static_cast<long>(out_deg[v]) - static_cast<long>(out_t[v]));
        in_excess[v] = std::max(0L, static_cast<long>(in_deg[v]) - static_cast<long>(in_t[v]));
      }
      auto drop = [&](std::uint32_t u, std::uint32_t v) {
        h.remove_edge(u, v);
        removed.insert(edge_key(u, v));
        --out_excess[u];
        --in_excess[v];
        ++result.deletions;
      };
      // Deletions that fix an excess on both endpoints first.
      for (std::uint32_t u = 0; u < n; ++u) {
        if (out_excess[u] <= 0) continue;
        std::vector<std::uint32_t> nbrs = h.out_neighbors(u);
        std::sort(nbrs.begin(), nbrs.end(), [&](std::uint32_t a, std::uint32_t b) {
          if (in_excess[a] != in_excess[b]) return in_excess[a] > in_excess[b];
          return rank[a] < rank[b];
        });
        for (std::uint32_t v : nbrs) {
          if (out_excess[u] <= 0 || in_excess[v] <= 0) break;
          drop(u, v);
        }
      }
      // Remaining excesses: delete anyway, the other endpoint is refilled by
      // the addition phase.
      for (std::uint32_t u = 0; u < n; ++u) {
        std::vector<std::uint32_t> nbrs = h.out_neighbors(u);
        std::sort(nbrs.begin(), nbrs.end(), [&](std::uint32_t a, std::uint32_t b) { return rank[a] < rank[b]; });
        for (std::size_t i = 0; i < nbrs.size() && out_excess[u] > 0; ++i) drop(u, nbrs[i]);
      }
      for (std::uint32_t v = 0; v < n; ++v) {
        std::vector<std::uint32_t> nbrs = h.in_neighbors(v);
        std::sort(nbrs.begin(), nbrs.end(), [&](std::uint32_t a, std::uint32_t b) { return rank[a] < rank[b]; });
        for (std::size_t i = 0; i < nbrs.size() && in_excess[v] > 0; ++i) drop(nbrs[i], v);
      }
    }
    std::vector<long> out_need(n), in_need(n);
    bool consistent = true;
    for (std::uint32_t v = 0; v < n; ++v) {
      out_need[v] = static_cast<long>(out_t[v]) - static_cast<long>(h.out_degree(v));
      in_need[v] = static_cast<long>(in_t[v]) - static_cast<long>(h.in_degree(v));
      if (out_need[v] < 0 || in_need[v] < 0) consistent = false;
    }
    if (!consistent) continue;
    if (!realize_additions(h, out_need, in_need, removed, rank, result.additions)) continue;
    if (!verify_k_anonymity(h, k).anonymous) continue;
    return result;
  }
  throw InfeasibleError("could not realize a " + std::to_string(k) +
                        "-degree-anonymous graph after " + std::to_string(kKdegAttempts) +
                        " attempts");
}

}  // namespace

std::string_view to_string(StructMethod m) {
  switch (m) {
    case StructMethod::naive: return "naive";
    case StructMethod::sparsification: return "sparsification";
    case StructMethod::kdeg_add: return "kdeg_add";
    case StructMethod::kdeg_add_del: return "kdeg_add_del";
    case StructMethod::switching: return "switching";
    case StructMethod::perturbation: return "perturbation";
  }
  return "?";
}

StructMethod parse_struct_method(std::string_view name) {
  for (StructMethod m : all_struct_methods()) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown structural method '" + std::string(name) + "'");
}

const std::vector<StructMethod>& all_struct_methods() {
  static const std::vector<StructMethod> methods{
      StructMethod::naive,       StructMethod::sparsification, StructMethod::kdeg_add,
      StructMethod::kdeg_add_del, StructMethod::switching,      StructMethod::perturbation};
  return methods;
}

void StructAnonConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must be in [0, 1]");
  if (k < 1) throw ConfigError("k must be at least 1");
}

std::size_t edges_for(double p, std::size_t count) {
  // The slack absorbs representation error such as 0.29 * 100 = 28.999...
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(count) + 1e-9));
}

DiGraph sparsify(const DiGraph& g, double p, Rng& rng) {
  return remove_random_edges(g, edges_for(p, g.edge_count()), rng);
}

SwitchResult switch_edges(const DiGraph& g, double p, Rng& rng) {
  const std::size_t wanted =
      static_cast<std::size_t>(std::floor(p * static_cast<double>(g.edge_count()) / 2.0));
  SwitchResult result{g, 0, 0};
  auto edges = g.edges();
  const std::size_t m = edges.size();
  const std::size_t max_attempts = 100 * m;
  DiGraph& h = result.graph;
  for (std::size_t attempt = 0; result.swaps < wanted && attempt < max_attempts && m >= 2; ++attempt) {
    const std::size_t i = uniform_index(rng, m);
    const std::size_t j = uniform_index(rng, m);
    if (i == j) continue;
    const auto [a, b] = edges[i];
    const auto [c, d] = edges[j];
    if (a == c || b == d || a == d || c == b) continue;
    if (h.has_edge(a, d) || h.has_edge(c, b)) continue;
    h.remove_edge(a, b);
    h.remove_edge(c, d);
    h.add_edge(a, d);
    h.add_edge(c, b);
    edges[i] = {a, d};
    edges[j] = {c, b};
    ++result.swaps;
  }
  result.shortfall = wanted - result.swaps;
  return result;
}

DiGraph perturb(const DiGraph& g, double p, Rng& rng) {
  const std::size_t n = g.node_count();
  const std::size_t count = edges_for(p, g.edge_count());
  const std::size_t slots = n < 2 ? 0 : n * (n - 1);
  const std::size_t non_edges = slots - g.edge_count();
  if (p > 0 && non_edges == 0) throw InfeasibleError("cannot perturb a complete graph");
  if (non_edges < count) {
    throw InfeasibleError("only " + std::to_string(non_edges) + " non-edges available, " +
                          std::to_string(count) + " required");
  }
  DiGraph out = remove_random_edges(g, count, rng);
  if (count == 0) return out;
  if (non_edges >= 4 * count) {
    std::size_t added = 0;
    while (added < count) {
      auto u = static_cast<std::uint32_t>(uniform_index(rng, n));
      auto v = static_cast<std::uint32_t>(uniform_index(rng, n));
      if (u == v || g.has_edge(u, v)) continue;
      if (out.add_edge(u, v)) ++added;
    }
  } else {
    std::vector<NodePair> pool;
    pool.reserve(non_edges);
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        if (u != v && !g.has_edge(u, v)) pool.emplace_back(u, v);
      }
    }
    sample_prefix(pool, count, rng);
    for (std::size_t i = 0; i < count; ++i) out.add_edge(pool[i].first, pool[i].second);
  }
  return out;
}

KAnonymityReport verify_k_anonymity(const DiGraph& g, std::size_t k) {
  KAnonymityReport report;
  auto check = [&](Direction d, std::vector<std::size_t>& bad) {
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t deg : g.degrees(d)) ++counts[deg];
    for (const auto& [deg, c] : counts) {
      if (c < k) bad.push_back(deg);
    }
  };
  check(Direction::out, report.bad_out_degrees);
  check(Direction::in, report.bad_in_degrees);
  report.anonymous = report.bad_out_degrees.empty() && report.bad_in_degrees.empty();
  return report;
}

std::vector<std::size_t> anonymize_degree_sequence(std::span<const std::size_t> degrees,
                                                   std::size_t k, bool allow_decrease) {
  const std::size_t n = degrees.size();
  if (k == 0) throw ConfigError("k must be at least 1");
  if (n == 0) return {};
  if (k > n) {
    throw InfeasibleError("k=" + std::to_string(k) + " exceeds sequence length " + std::to_string(n));
  }
  std::vector<std::size_t> result(degrees.begin(), degrees.end());
  if (k == 1) return result;

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return degrees[a] > degrees[b]; });
  std::vector<std::size_t> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = degrees[order[i]];

  // Target value and cost of making d[j..i) one group.
  auto group_target = [&](std::size_t j, std::size_t i) {
    return allow_decrease ? d[j + (i - j - 1) / 2] : d[j];
  };
  auto group_cost = [&](std::size_t j, std::size_t i) {
    const std::size_t t = group_target(j, i);
    std::size_t c = 0;
    for (std::size_t l = j; l < i; ++l) c += d[l] > t ? d[l] - t : t - d[l];
    return c;
  };

  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> cost(n + 1, kInf);
  std::vector<std::size_t> split(n + 1, 0);
  cost[0] = 0;
  for (std::size_t i = k; i <= n; ++i) {
    const std::size_t lo = i >= 2 * k - 1 ? i - (2 * k - 1) : 0;
    for (std::size_t j = lo; j + k <= i; ++j) {
      if (cost[j] == kInf) continue;
      const std::size_t c = cost[j] + group_cost(j, i);
      if (c < cost[i]) {
        cost[i] = c;
        split[i] = j;
      }
    }
  }
  for (std::size_t i = n; i > 0;) {
    const std::size_t j = split[i];
    const std::size_t t = group_target(j, i);
    for (std::size_t l = j; l < i; ++l) result[order[l]] = t;
    i = j;
  }
  return result;
}

KDegreeResult kdeg_add(const DiGraph& g, std::size_t k, std::uint64_t seed) {
  return kdeg_impl(g, k, seed, false);
}

KDegreeResult kdeg_add_del(const DiGraph& g, std::size_t k, std::uint64_t seed) {
  return kdeg_impl(g, k, seed, true);
}

std::vector<UserId> draw_pseudonyms(std::size_t n, Rng& rng) {
  std::unordered_set<std::uint64_t> used;
  std::vector<UserId> out;
  out.reserve(n);
  const std::uint64_t range = std::max<std::uint64_t>(1'000'000'000ULL, 16 * n);
  while (out.size() < n) {
    std::uint64_t v = 1 + uniform_index(rng, range);
    if (used.insert(v).second) out.push_back(UserId{v});
  }
  return out;
}

GroundTruth StructuralRelease::ground_truth(const SocialNetwork& network) const {
  std::vector<std::pair<UserId, UserId>> pairs;
  pairs.reserve(pseudonyms.size());
  for (std::size_t i = 0; i < pseudonyms.size(); ++i) pairs.emplace_back(pseudonyms[i], network.users[i]);
  return GroundTruth(std::move(pairs));
}

StructuralRelease anonymize_structure(const SocialNetwork& network, const StructAnonConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  StructuralRelease release;
  release.pseudonyms = draw_pseudonyms(network.size(), rng);
  DiGraph g = to_digraph(network);
  switch (config.method) {
    case StructMethod::naive:
      release.graph = std::move(g);
      break;
    case StructMethod::sparsification:
      release.edits = edges_for(config.p, g.edge_count());
      release.graph = sparsify(g, config.p, rng);
      break;
    case StructMethod::switching: {
      auto r = switch_edges(g, config.p, rng);
      release.graph = std::move(r.graph);
      release.edits = 4 * r.swaps;
      release.warnings = r.shortfall;
      break;
    }
    case StructMethod::perturbation:
      release.edits = 2 * edges_for(config.p, g.edge_count());
      release.graph = perturb(g, config.p, rng);
      break;
    case StructMethod::kdeg_add: {
      auto r = kdeg_add(g, config.k, rng());
      release.graph = std::move(r.graph);
      release.edits = r.edits();
      break;
    }
    case StructMethod::kdeg_add_del: {
      auto r = kdeg_add_del(g, config.k, rng());
      release.graph = std::move(r.graph);
      release.edits = r.edits();
      break;
    }
  }
  return release;
}

}  // namespace hetanon::anon
