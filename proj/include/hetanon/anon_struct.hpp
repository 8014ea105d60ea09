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

// Structural anonymization of the follow graph.
//
// All edge-level operations work on DiGraph node indices; the network-level
// entry point anonymize_structure() also draws fresh pseudonyms.

#ifndef HETANON_ANON_STRUCT_HPP_
#define HETANON_ANON_STRUCT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetanon/common.hpp"
#include "hetanon/graph.hpp"
#include "hetanon/types.hpp"

namespace hetanon::anon {

enum class StructMethod { naive, sparsification, kdeg_add, kdeg_add_del, switching, perturbation };

std::string_view to_string(StructMethod m);
// Throws ConfigError on unknown names.
StructMethod parse_struct_method(std::string_view name);
const std::vector<StructMethod>& all_struct_methods();

struct StructAnonConfig {
  StructMethod method = StructMethod::naive;
  double p = 0.1;
  std::size_t k = 10;
  std::uint64_t rng_seed = 1;
  void validate() const;
};

// Number of edges touched by probability p: floor(p * count).
std::size_t edges_for(double p, std::size_t count);

// Removes floor(p|E|) edges chosen uniformly without replacement.
DiGraph sparsify(const DiGraph& g, double p, Rng& rng);

struct SwitchResult {
  DiGraph graph;
  std::size_t swaps = 0;
  // Requested swaps that could not be made within the attempt budget.
  std::size_t shortfall = 0;
};

// floor(p|E|/2) degree-preserving swaps (a,b),(c,d) -> (a,d),(c,b), found by
// rejection sampling with at most 100|E| attempts.
SwitchResult switch_edges(const DiGraph& g, double p, Rng& rng);

// Removes floor(p|E|) edges, then adds as many edges drawn uniformly from the
// original graph's non-edges. Throws InfeasibleError if there is no room.
DiGraph perturb(const DiGraph& g, double p, Rng& rng);

struct KAnonymityReport {
  bool anonymous = true;
  std::vector<std::size_t> bad_out_degrees;
  std::vector<std::size_t> bad_in_degrees;
};

// True iff every realized in-degree value and every realized out-degree value
// is shared by at least k nodes.
KAnonymityReport verify_k_anonymity(const DiGraph& g, std::size_t k);

// Degree targets of minimum total change in which every value is shared by at
// least k entries. Groups consecutive degrees (in sorted order) into runs of
// size k..2k-1; with allow_decrease each run moves to its median, otherwise
// to its maximum. Throws InfeasibleError when k exceeds the sequence length.
std::vector<std::size_t> anonymize_degree_sequence(std::span<const std::size_t> degrees,
                                                   std::size_t k, bool allow_decrease);

struct KDegreeResult {
  DiGraph graph;
  std::size_t additions = 0;
  std::size_t deletions = 0;
  std::size_t attempts = 0;
  std::size_t edits() const { return additions + deletions; }
};

// k-degree anonymity (in- and out-degree separately) by edge addition only.
// The output is a superset of the input. Throws InfeasibleError.
KDegreeResult kdeg_add(const DiGraph& g, std::size_t k, std::uint64_t seed);

// k-degree anonymity by simultaneous edge addition and deletion.
KDegreeResult kdeg_add_del(const DiGraph& g, std::size_t k, std::uint64_t seed);

struct StructuralRelease {
  // Pseudonym of each original user, aligned with network.users.
  std::vector<UserId> pseudonyms;
  // Anonymized graph over original user indices.
  DiGraph graph;
  std::size_t warnings = 0;
  std::size_t edits = 0;

  GroundTruth ground_truth(const SocialNetwork& network) const;
};

// Fresh random pseudonyms, distinct, unrelated to the original order.
std::vector<UserId> draw_pseudonyms(std::size_t n, Rng& rng);

StructuralRelease anonymize_structure(const SocialNetwork& network, const StructAnonConfig& config);

}  // namespace hetanon::anon

#endif  // HETANON_ANON_STRUCT_HPP_
