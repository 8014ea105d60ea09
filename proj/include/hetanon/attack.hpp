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
// De-anonymization attack: revealing-post selection, keyword queries against
// the target platform, and candidate ranking by structural and textual
// similarity (optionally including neighbor fitness), plus two graph-only
// baseline metrics run through the same pipeline.

#ifndef HETANON_ATTACK_HPP_
#define HETANON_ATTACK_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hetanon/graph.hpp"
#include "hetanon/target.hpp"
#include "hetanon/types.hpp"

namespace hetanon::attack {

enum class Metric { simple, improved, narayanan, ada };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view name);
const std::vector<Metric>& all_metrics();

struct AttackConfig {
  // Revealing posts queried per user.
  std::size_t k_posts = 10;
  // Weight of structure against text.
  double alpha = 0.5;
  // Weight of the individual similarity against neighbor fitness.
  double beta = 0.7;
  // Neighbors sampled per direction.
  std::size_t lambda = 20;
  // Recent posts fetched per candidate.
  std::size_t theta = 50;
  std::size_t bins = 7;
  std::size_t bin_width = 50;
  // Candidates returned per user.
  std::size_t top_h = 1;
  // Pre-mapped users available to the baselines.
  std::size_t seed_count = 20;
  std::size_t search_limit = target::kDefaultSearchLimit;
  std::uint64_t rng_seed = 1;
  std::size_t jobs = 1;

  void validate() const;
};

using StructFeature = std::vector<double>;

struct CandidateScore {
  UserId candidate;
  double sim_struct = 0.0;
  double sim_text = 0.0;
  double sim_neighbor = 0.0;
  double sim_total = 0.0;
};

// Text vector of the anonymized side; dense once noise has been added.
class TextVector {
 public:
  TextVector() = default;
  explicit TextVector(SparseVector v);
  explicit TextVector(std::vector<double> v);

  bool is_dense() const { return dense_; }
  double norm() const { return norm_; }
  double dot(const SparseVector& other) const;
  double cosine(const SparseVector& other, double other_norm) const;

 private:
  bool dense_ = false;
  SparseVector sparse_;
  std::vector<double> values_;
  double norm_ = 0.0;
};

// Mean of a post row over all vocabulary coordinates.
double post_score(const SparseVector& x, std::size_t vocab_size);
double post_score(const PostWordMatrix& x, std::size_t row);

// The user's post rows by descending score, ties by ascending row; at most
// k_posts. Throws Error for a user without posts.
std::vector<std::size_t> top_revealing(const AnonymizedDataset& d, std::size_t user_row,
                                       std::size_t k_posts);

// Columns whose value in the row is strictly above threshold, ascending.
std::vector<std::uint32_t> words_above(const PostWordMatrix& x, std::size_t row, double threshold);

// Words of the row above its own score; nullopt when none qualify.
std::optional<target::SearchQuery> build_query(const PostWordMatrix& x, std::size_t row,
                                               const Vocabulary& vocab);

// Union of search results, ascending by UserId.
std::vector<UserId> gather_candidates(std::span<const target::SearchQuery> queries,
                                      target::TargetClient& client, std::size_t limit);

// Bin i counts neighbors of degree in [i*width, (i+1)*width); the last bin
// is open-ended. Followers first, then followees.
StructFeature struct_feature(std::span<const std::size_t> follower_degrees,
                             std::span<const std::size_t> followee_degrees, std::size_t bins,
                             std::size_t width);

// IDF weights of a release, shared by the candidate side.
struct TextSpace {
  const Vocabulary* vocab = nullptr;
  std::vector<double> idf;
  static TextSpace of(const AnonymizedDataset& d);
};

// PII-stripped posts concatenated into one document, then TF-IDF.
SparseVector text_feature(std::span<const Post> posts, const Vocabulary& vocab,
                          std::span<const double> idf);

double cosine(std::span<const double> a, std::span<const double> b);
double cosine(const SparseVector& a, const SparseVector& b);

// Attacker-side features of an anonymized user.
struct UserSide {
  UserId pseudonym;
  StructFeature structure;
  std::vector<TextVector> posts;
  StructFeature neighbor_structure;
  std::vector<std::shared_ptr<const TextVector>> neighbor_texts;
};

// Features of a candidate collected through the target API.
struct CandidateSide {
  UserId id;
  StructFeature structure;
  SparseVector text;
  StructFeature neighbor_structure;
  SparseVector neighbor_text;
  target::DegreePair degree;
  // Followers and followees, ascending, deduplicated.
  std::vector<UserId> neighbors;
};

double struct_similarity(const UserSide& u, const CandidateSide& c);
// Mean cosine of each of u's posts against c's document; 0 without posts.
double text_similarity(const UserSide& u, const CandidateSide& c);
double sim_simple(const UserSide& u, const CandidateSide& c, double alpha);
double sim_neighbors(const UserSide& u, const CandidateSide& c, double alpha);
CandidateScore sim_total(const UserSide& u, const CandidateSide& c, double alpha, double beta);

// Pre-mapped (pseudonym, true id) pairs.
using SeedMap = std::vector<std::pair<UserId, UserId>>;

SeedMap draw_seed_map(const GroundTruth& truth, std::size_t count, std::uint64_t seed);

// Neighbors of u whose seed identity is a neighbor of c.
std::size_t narayanan_count(std::span<const UserId> u_neighbors, std::span<const UserId> c_neighbors,
                            const SeedMap& seeds);
// Count normalized by sqrt(|N(u)| |N(c)|); 0 when either side is empty.
double narayanan_similarity(std::span<const UserId> u_neighbors,
                            std::span<const UserId> c_neighbors, const SeedMap& seeds);

inline constexpr std::size_t kProximityHops = 4;

// (cap + 1 - d) / (cap + 1) for reachable d <= cap, else 0.
double hop_proximity(std::optional<std::size_t> distance, std::size_t cap = kProximityHops);

// Per-direction 1 - |a-b| / max(a,b), averaged. A direction where both are
// zero counts as equal; an isolated user on either side scores 0.
double degree_closeness(target::DegreePair a, target::DegreePair b);

double ada_similarity(target::DegreePair u_degree, target::DegreePair c_degree,
                      std::span<const double> u_proximity, std::span<const double> c_proximity,
                      double narayanan);

struct UserResult {
  UserId pseudonym;
  std::size_t queries = 0;
  std::size_t candidates = 0;
  // Best first, at most top_h.
  std::vector<CandidateScore> ranked;
};

struct AttackResult {
  std::vector<UserResult> users;
  target::BudgetTotals budget;
};

class Attack {
 public:
  // Baselines need seeds; the other metrics ignore them.
  Attack(const AnonymizedDataset& dataset, target::TargetClient& client, AttackConfig config,
         Metric metric, SeedMap seeds = {});
  ~Attack();

  UserSide user_side(std::size_t row) const;
  const CandidateSide& candidate_side(UserId candidate);

  std::vector<target::SearchQuery> queries_for(std::size_t row) const;
  CandidateScore score(std::size_t row, const CandidateSide& c);

  // Ranked top-h for one user. Throws NotFoundError for unknown pseudonyms.
  std::vector<CandidateScore> deanonymize(UserId pseudonym);

  // Every user of the release, in pseudonym order.
  AttackResult run();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

void write_mapping(std::ostream& out, const AttackResult& result);

}  // namespace hetanon::attack

#endif  // HETANON_ATTACK_HPP_
