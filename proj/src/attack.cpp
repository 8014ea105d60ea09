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
#include "hetanon/attack.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>

#include "hetanon/io.hpp"
#include "hetanon/kernels.hpp"
#include "hetanon/parallel.hpp"
#include "hetanon/text.hpp"

namespace hetanon::attack {

namespace {

constexpr std::size_t kAll = std::numeric_limits<std::size_t>::max();
constexpr std::uint64_t kUserStream = 0x75;
constexpr std::uint64_t kCandidateStream = 0x63;
constexpr std::uint64_t kSeedStream = 0x5eed;

double sparse_dot(const SparseVector& a, const SparseVector& b) {
  auto ai = a.indices();
  auto bi = b.indices();
  auto av = a.values();
  auto bv = b.values();
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ai.size() && j < bi.size()) {
    if (ai[i] < bi[j]) {
      ++i;
    } else if (bi[j] < ai[i]) {
      ++j;
    } else {
      s += av[i++] * bv[j++];
    }
  }
  return s;
}

std::vector<UserId> merge_unique(std::vector<UserId> a, const std::vector<UserId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void add_to(StructFeature& acc, const StructFeature& x) {
  if (acc.size() < x.size()) acc.resize(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += x[i];
}

std::vector<std::uint32_t> sample_rows(const std::vector<std::uint32_t>& pool, std::size_t count,
                                       Rng& rng) {
  if (count >= pool.size()) return pool;
  std::vector<std::uint32_t> items = pool;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(count);
  return items;
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::simple: return "simple";
    case Metric::improved: return "improved";
    case Metric::narayanan: return "narayanan";
    case Metric::ada: return "ada";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : all_metrics()) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics{Metric::improved, Metric::simple, Metric::ada,
                                           Metric::narayanan};
  return metrics;
}

void AttackConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must be in [0, 1]");
  if (bins < 1) throw ConfigError("bins must be at least 1");
  if (bin_width < 1) throw ConfigError("bin width must be at least 1");
}

TextVector::TextVector(SparseVector v)
    : dense_(false), sparse_(std::move(v)), norm_(std::sqrt(sparse_.squared_norm())) {}

TextVector::TextVector(std::vector<double> v)
    : dense_(true), values_(std::move(v)), norm_(std::sqrt(kernels::squared_norm(values_))) {}

double TextVector::dot(const SparseVector& other) const {
  if (dense_) return kernels::gather_dot(values_, other.indices(), other.values());
  return sparse_dot(sparse_, other);
}

double TextVector::cosine(const SparseVector& other, double other_norm) const {
  if (norm_ == 0.0 || other_norm == 0.0) return 0.0;
  return dot(other) / (norm_ * other_norm);
}

double post_score(const SparseVector& x, std::size_t vocab_size) {
  // Summing in value order makes posts with the same weights tie exactly,
  // whatever their columns.
  std::vector<double> v(x.values().begin(), x.values().end());
  std::sort(v.begin(), v.end());
  double total = 0.0;
  for (double w : v) total += w;
  return total / static_cast<double>(vocab_size);
}

double post_score(const PostWordMatrix& x, std::size_t row) {
  if (!x.is_dense()) return post_score(x.sparse_row(row), x.cols());
  return x.row_sum(row) / static_cast<double>(x.cols());
}

std::vector<std::size_t> top_revealing(const AnonymizedDataset& d, std::size_t user_row,
                                       std::size_t k_posts) {
  auto posts = d.user_post.posts_of(user_row);
  if (posts.empty()) throw Error("user has no posts");
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(posts.size());
  // Scores are compared on a 40-bit mantissa so that mathematically equal
  // sums of log weights, which can differ in the last bits, fall back to
  // row order.
  auto coarse = [](double s) {
    int e;
    const double m = std::frexp(s, &e);
    return std::ldexp(std::round(std::ldexp(m, 40)), e - 40);
  };
  for (std::uint32_t p : posts) scored.emplace_back(coarse(post_score(d.post_word, p)), p);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(k_posts, scored.size()); ++i) out.push_back(scored[i].second);
  return out;
}

std::vector<std::uint32_t> words_above(const PostWordMatrix& x, std::size_t row, double threshold) {
  std::vector<std::uint32_t> out;
  if (x.is_dense()) {
    kernels::select_greater(x.dense_row(row), threshold, out);
    return out;
  }
  const SparseVector& r = x.sparse_row(row);
  if (threshold >= 0.0) {
    for (std::size_t i = 0; i < r.nnz(); ++i) {
      if (r.values()[i] > threshold) out.push_back(r.indices()[i]);
    }
    return out;
  }
  // Implicit zeros also clear a negative threshold.
  std::size_t next = 0;
  for (std::uint32_t c = 0; c < x.cols(); ++c) {
    double v = 0.0;
    if (next < r.nnz() && r.indices()[next] == c) v = r.values()[next++];
    if (v > threshold) out.push_back(c);
  }
  return out;
}

std::optional<target::SearchQuery> build_query(const PostWordMatrix& x, std::size_t row,
                                               const Vocabulary& vocab) {
  const auto cols = words_above(x, row, post_score(x, row));
  if (cols.empty()) return std::nullopt;
  std::vector<std::string> words;
  words.reserve(cols.size());
  for (std::uint32_t c : cols) words.push_back(vocab.word(c));
  return target::SearchQuery::of(std::move(words));
}

std::vector<UserId> gather_candidates(std::span<const target::SearchQuery> queries,
                                      target::TargetClient& client, std::size_t limit) {
  std::vector<UserId> out;
  for (const auto& q : queries) {
    auto hits = client.search(q, limit);
    out.insert(out.end(), hits.begin(), hits.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StructFeature struct_feature(std::span<const std::size_t> follower_degrees,
                             std::span<const std::size_t> followee_degrees, std::size_t bins,
                             std::size_t width) {
  StructFeature f(2 * bins, 0.0);
  auto fill = [&](std::span<const std::size_t> degrees, std::size_t offset) {
    for (std::size_t d : degrees) f[offset + std::min(d / width, bins - 1)] += 1.0;
  };
  fill(follower_degrees, 0);
  fill(followee_degrees, bins);
  return f;
}

TextSpace TextSpace::of(const AnonymizedDataset& d) {
  TextSpace s;
  s.vocab = &d.vocab;
  std::vector<std::uint32_t> df = d.doc_freq;
  if (df.empty()) {
    if (d.post_word.is_dense()) throw Error("dense release without document frequencies");
    df.assign(d.vocab.size(), 0);
    for (std::size_t r = 0; r < d.post_word.rows(); ++r) {
      for (std::uint32_t c : d.post_word.sparse_row(r).indices()) ++df[c];
    }
  }
  s.idf = text::idf_weights(d.post_count(), df);
  return s;
}

SparseVector text_feature(std::span<const Post> posts, const Vocabulary& vocab,
                          std::span<const double> idf) {
  std::vector<std::string> doc;
  for (const Post& p : posts) {
    auto tokens = p.raw.empty() ? p.tokens : text::strip_pii(p.raw);
    doc.insert(doc.end(), std::make_move_iterator(tokens.begin()),
               std::make_move_iterator(tokens.end()));
  }
  return text::vectorize(doc, vocab, idf);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = kernels::squared_norm(a);
  const double nb = kernels::squared_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return kernels::dot(a, b) / (std::sqrt(na) * std::sqrt(nb));
}

double cosine(const SparseVector& a, const SparseVector& b) {
  const double na = a.squared_norm();
  const double nb = b.squared_norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return sparse_dot(a, b) / (std::sqrt(na) * std::sqrt(nb));
}

double struct_similarity(const UserSide& u, const CandidateSide& c) {
  return cosine(u.structure, c.structure);
}

double text_similarity(const UserSide& u, const CandidateSide& c) {
  if (u.posts.empty()) return 0.0;
  const double norm = std::sqrt(c.text.squared_norm());
  double total = 0.0;
  for (const auto& t : u.posts) total += t.cosine(c.text, norm);
  return total / static_cast<double>(u.posts.size());
}

double sim_simple(const UserSide& u, const CandidateSide& c, double alpha) {
  return alpha * struct_similarity(u, c) + (1.0 - alpha) * text_similarity(u, c);
}

double sim_neighbors(const UserSide& u, const CandidateSide& c, double alpha) {
  const double structure = cosine(u.neighbor_structure, c.neighbor_structure);
  double text = 0.0;
  if (!u.neighbor_texts.empty()) {
    const double norm = std::sqrt(c.neighbor_text.squared_norm());
    for (const auto& t : u.neighbor_texts) text += t->cosine(c.neighbor_text, norm);
    text /= static_cast<double>(u.neighbor_texts.size());
  }
  return alpha * structure + (1.0 - alpha) * text;
}

CandidateScore sim_total(const UserSide& u, const CandidateSide& c, double alpha, double beta) {
  CandidateScore s;
  s.candidate = c.id;
  s.sim_struct = struct_similarity(u, c);
  s.sim_text = text_similarity(u, c);
  s.sim_neighbor = sim_neighbors(u, c, alpha);
  s.sim_total = beta * (alpha * s.sim_struct + (1.0 - alpha) * s.sim_text) +
                (1.0 - beta) * s.sim_neighbor;
  return s;
}

SeedMap draw_seed_map(const GroundTruth& truth, std::size_t count, std::uint64_t seed) {
  SeedMap pairs = truth.pairs();
  Rng rng(seed);
  const std::size_t take = std::min(count, pairs.size());
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, pairs.size() - i));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(take);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::size_t narayanan_count(std::span<const UserId> u_neighbors, std::span<const UserId> c_neighbors,
                            const SeedMap& seeds) {
  std::size_t count = 0;
  for (UserId w : u_neighbors) {
    auto it = std::lower_bound(seeds.begin(), seeds.end(), w,
                               [](const auto& p, UserId id) { return p.first < id; });
    if (it == seeds.end() || it->first != w) continue;
    if (std::binary_search(c_neighbors.begin(), c_neighbors.end(), it->second)) ++count;
  }
  return count;
}

double narayanan_similarity(std::span<const UserId> u_neighbors,
                            std::span<const UserId> c_neighbors, const SeedMap& seeds) {
  if (u_neighbors.empty() || c_neighbors.empty()) return 0.0;
  return static_cast<double>(narayanan_count(u_neighbors, c_neighbors, seeds)) /
         std::sqrt(static_cast<double>(u_neighbors.size()) * static_cast<double>(c_neighbors.size()));
}

double hop_proximity(std::optional<std::size_t> distance, std::size_t cap) {
  if (!distance || *distance > cap) return 0.0;
  return static_cast<double>(cap + 1 - *distance) / static_cast<double>(cap + 1);
}

double degree_closeness(target::DegreePair a, target::DegreePair b) {
  if (a.total() == 0 || b.total() == 0) return 0.0;
  auto one = [](std::size_t x, std::size_t y) {
    const std::size_t m = std::max(x, y);
    if (m == 0) return 1.0;
    const std::size_t diff = x > y ? x - y : y - x;
    return 1.0 - static_cast<double>(diff) / static_cast<double>(m);
  };
  return 0.5 * (one(a.in, b.in) + one(a.out, b.out));
}

double ada_similarity(target::DegreePair u_degree, target::DegreePair c_degree,
                      std::span<const double> u_proximity, std::span<const double> c_proximity,
                      double narayanan) {
  return (degree_closeness(u_degree, c_degree) + cosine(u_proximity, c_proximity) + narayanan) / 3.0;
}

struct Attack::State {
  const AnonymizedDataset& d;
  target::TargetClient& client;
  AttackConfig cfg;
  Metric metric;
  SeedMap seeds;
  TextSpace space;
  Adjacency adj;
  std::vector<StructFeature> structure;
  std::vector<std::shared_ptr<const TextVector>> user_text;

  // Distances from every seed on the anonymized graph (rows) and on the
  // target (true ids), filled for ada only.
  std::vector<std::vector<std::optional<std::size_t>>> anon_distance;
  std::vector<std::unordered_map<UserId, std::size_t>> target_distance;
  bool ada_ready = false;

  std::mutex mu;
  std::unordered_map<UserId, std::unique_ptr<CandidateSide>> candidates;

  State(const AnonymizedDataset& dataset, target::TargetClient& c, AttackConfig config, Metric m,
        SeedMap s)
      : d(dataset), client(c), cfg(config), metric(m), seeds(std::move(s)) {
    cfg.validate();
    std::sort(seeds.begin(), seeds.end());
    space = TextSpace::of(d);
    adj = Adjacency::build(d.users, d.edges);
    const std::size_t n = d.users.size();
    structure.resize(n);
    std::vector<std::size_t> in_deg, out_deg;
    for (std::size_t v = 0; v < n; ++v) {
      in_deg.clear();
      out_deg.clear();
      for (std::uint32_t w : adj.followers[v]) in_deg.push_back(adj.total_degree(w));
      for (std::uint32_t w : adj.followees[v]) out_deg.push_back(adj.total_degree(w));
      structure[v] = struct_feature(in_deg, out_deg, cfg.bins, cfg.bin_width);
    }
    if (metric == Metric::improved) {
      user_text.resize(n);
      parallel_for(n, cfg.jobs, [&](std::size_t v) { user_text[v] = build_user_text(v); });
    }
  }

  std::shared_ptr<const TextVector> build_user_text(std::size_t row) const {
    const PostWordMatrix& x = d.post_word;
    if (x.is_dense()) {
      std::vector<double> acc(x.cols(), 0.0);
      for (std::uint32_t p : d.user_post.posts_of(row)) kernels::add_in_place(acc, x.dense_row(p));
      return std::make_shared<TextVector>(std::move(acc));
    }
    std::vector<double> acc(x.cols(), 0.0);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t p : d.user_post.posts_of(row)) {
      const SparseVector& r = x.sparse_row(p);
      for (std::size_t i = 0; i < r.nnz(); ++i) {
        acc[r.indices()[i]] += r.values()[i];
        touched.push_back(r.indices()[i]);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::vector<double> values;
    values.reserve(touched.size());
    for (std::uint32_t t : touched) values.push_back(acc[t]);
    return std::make_shared<TextVector>(SparseVector(std::move(touched), std::move(values)));
  }

  std::vector<UserId> anon_neighbors(std::size_t row) const {
    std::vector<UserId> out;
    for (std::uint32_t w : adj.followers[row]) out.push_back(d.users[w]);
    for (std::uint32_t w : adj.followees[row]) out.push_back(d.users[w]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  StructFeature target_struct(const target::NeighborSample& full) {
    std::vector<std::size_t> in_deg, out_deg;
    for (UserId w : full.followers) in_deg.push_back(client.degree_of(w).total());
    for (UserId w : full.followees) out_deg.push_back(client.degree_of(w).total());
    return struct_feature(in_deg, out_deg, cfg.bins, cfg.bin_width);
  }

  std::unique_ptr<CandidateSide> build_candidate(UserId id) {
    Rng rng(derive_seed(cfg.rng_seed, {kCandidateStream, id.value}));
    auto c = std::make_unique<CandidateSide>();
    c->id = id;
    const auto full = client.neighbors(id, kAll, rng);
    c->degree = {full.followers.size(), full.followees.size()};
    c->neighbors = merge_unique(full.followers, full.followees);
    if (metric == Metric::simple || metric == Metric::improved) {
      c->structure = target_struct(full);
      const auto posts = client.recent_posts(id, cfg.theta);
      c->text = text_feature(posts, *space.vocab, space.idf);
    }
    if (metric == Metric::improved) {
      const auto sample = client.neighbors(id, cfg.lambda, rng);
      const auto pool = merge_unique(sample.followers, sample.followees);
      std::vector<Post> posts;
      c->neighbor_structure.assign(2 * cfg.bins, 0.0);
      for (UserId w : pool) {
        add_to(c->neighbor_structure, target_struct(client.neighbors(w, kAll, rng)));
        auto wp = client.recent_posts(w, cfg.theta);
        posts.insert(posts.end(), std::make_move_iterator(wp.begin()),
                     std::make_move_iterator(wp.end()));
      }
      c->neighbor_text = text_feature(posts, *space.vocab, space.idf);
    }
    return c;
  }

  const CandidateSide& candidate(UserId id) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = candidates.find(id);
      if (it != candidates.end()) return *it->second;
    }
    auto built = build_candidate(id);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = candidates.emplace(id, std::move(built));
    return *it->second;
  }

  void prepare_ada() {
    if (ada_ready) return;
    const std::size_t n = d.users.size();
    for (const auto& [pseudonym, true_id] : seeds) {
      // Undirected BFS over the release.
      std::vector<std::optional<std::size_t>> dist(n);
      auto start = d.find(pseudonym);
      if (start) {
        std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(*start)};
        dist[*start] = 0;
        while (!queue.empty()) {
          const std::uint32_t v = queue.front();
          queue.pop_front();
          if (*dist[v] >= kProximityHops) continue;
          for (const auto* list : {&adj.followers[v], &adj.followees[v]}) {
            for (std::uint32_t w : *list) {
              if (dist[w]) continue;
              dist[w] = *dist[v] + 1;
              queue.push_back(w);
            }
          }
        }
      }
      anon_distance.push_back(std::move(dist));

      // Same on the target, through the API.
      std::unordered_map<UserId, std::size_t> tdist{{true_id, 0}};
      std::vector<UserId> frontier{true_id};
      Rng rng(derive_seed(cfg.rng_seed, {kSeedStream, true_id.value}));
      for (std::size_t depth = 0; depth < kProximityHops && !frontier.empty(); ++depth) {
        std::vector<UserId> next;
        for (UserId v : frontier) {
          const auto full = client.neighbors(v, kAll, rng);
          for (const auto* list : {&full.followers, &full.followees}) {
            for (UserId w : *list) {
              if (tdist.emplace(w, depth + 1).second) next.push_back(w);
            }
          }
        }
        frontier = std::move(next);
      }
      target_distance.push_back(std::move(tdist));
    }
    ada_ready = true;
  }

  UserSide user_side(std::size_t row) const {
    UserSide u;
    u.pseudonym = d.users[row];
    u.structure = structure[row];
    const PostWordMatrix& x = d.post_word;
    for (std::uint32_t p : d.user_post.posts_of(row)) {
      if (x.is_dense()) {
        auto r = x.dense_row(p);
        u.posts.emplace_back(std::vector<double>(r.begin(), r.end()));
      } else {
        u.posts.emplace_back(x.sparse_row(p));
      }
    }
    if (metric == Metric::improved) {
      Rng rng(derive_seed(cfg.rng_seed, {kUserStream, u.pseudonym.value}));
      auto pool = sample_rows(adj.followers[row], cfg.lambda, rng);
      auto more = sample_rows(adj.followees[row], cfg.lambda, rng);
      pool.insert(pool.end(), more.begin(), more.end());
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
      u.neighbor_structure.assign(2 * cfg.bins, 0.0);
      for (std::uint32_t w : pool) {
        add_to(u.neighbor_structure, structure[w]);
        u.neighbor_texts.push_back(user_text[w]);
      }
    }
    return u;
  }

  std::vector<target::SearchQuery> queries_for(std::size_t row) const {
    std::vector<target::SearchQuery> out;
    if (d.user_post.posts_of(row).empty()) return out;
    for (std::size_t p : top_revealing(d, row, cfg.k_posts)) {
      if (auto q = build_query(d.post_word, p, d.vocab)) out.push_back(std::move(*q));
    }
    return out;
  }

  CandidateScore score(std::size_t row, const UserSide* u, const CandidateSide& c) {
    CandidateScore s;
    s.candidate = c.id;
    switch (metric) {
      case Metric::simple:
        s.sim_struct = struct_similarity(*u, c);
        s.sim_text = text_similarity(*u, c);
        s.sim_total = cfg.alpha * s.sim_struct + (1.0 - cfg.alpha) * s.sim_text;
        break;
      case Metric::improved:
        s = sim_total(*u, c, cfg.alpha, cfg.beta);
        break;
      case Metric::narayanan:
        s.sim_total = narayanan_similarity(anon_neighbors(row), c.neighbors, seeds);
        break;
      case Metric::ada: {
        std::vector<double> up, cp;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
          up.push_back(hop_proximity(anon_distance[i][row]));
          auto it = target_distance[i].find(c.id);
          cp.push_back(hop_proximity(it == target_distance[i].end()
                                         ? std::nullopt
                                         : std::optional<std::size_t>(it->second)));
        }
        const target::DegreePair ud{adj.followers[row].size(), adj.followees[row].size()};
        s.sim_total = ada_similarity(ud, c.degree, up, cp,
                                     narayanan_similarity(anon_neighbors(row), c.neighbors, seeds));
        break;
      }
    }
    return s;
  }

  std::vector<CandidateScore> rank(std::size_t row, const std::vector<UserId>& ids) {
    std::vector<CandidateScore> scored;
    if (ids.empty() || cfg.top_h == 0) return scored;
    std::optional<UserSide> u;
    if (metric == Metric::simple || metric == Metric::improved) u = user_side(row);
    for (UserId id : ids) scored.push_back(score(row, u ? &*u : nullptr, candidate(id)));
    std::sort(scored.begin(), scored.end(), [](const CandidateScore& a, const CandidateScore& b) {
      if (a.sim_total != b.sim_total) return a.sim_total > b.sim_total;
      return a.candidate < b.candidate;
    });
    if (scored.size() > cfg.top_h) scored.resize(cfg.top_h);
    return scored;
  }
};

Attack::Attack(const AnonymizedDataset& dataset, target::TargetClient& client, AttackConfig config,
               Metric metric, SeedMap seeds)
    : state_(std::make_unique<State>(dataset, client, config, metric, std::move(seeds))) {}

Attack::~Attack() = default;

UserSide Attack::user_side(std::size_t row) const { return state_->user_side(row); }

const CandidateSide& Attack::candidate_side(UserId candidate) { return state_->candidate(candidate); }

std::vector<target::SearchQuery> Attack::queries_for(std::size_t row) const {
  return state_->queries_for(row);
}

CandidateScore Attack::score(std::size_t row, const CandidateSide& c) {
  if (state_->metric == Metric::ada) state_->prepare_ada();
  std::optional<UserSide> u;
  if (state_->metric == Metric::simple || state_->metric == Metric::improved) u = user_side(row);
  return state_->score(row, u ? &*u : nullptr, c);
}

std::vector<CandidateScore> Attack::deanonymize(UserId pseudonym) {
  State& s = *state_;
  auto row = s.d.find(pseudonym);
  if (!row) throw NotFoundError("pseudonym " + std::to_string(pseudonym.value) + " not in release");
  if (s.metric == Metric::ada) s.prepare_ada();
  const auto ids = gather_candidates(s.queries_for(*row), s.client, s.cfg.search_limit);
  return s.rank(*row, ids);
}

AttackResult Attack::run() {
  State& s = *state_;
  const std::size_t n = s.d.users.size();
  AttackResult result;
  result.users.resize(n);
  std::vector<std::vector<UserId>> found(n);
  parallel_for(n, s.cfg.jobs, [&](std::size_t row) {
    const auto queries = s.queries_for(row);
    result.users[row].pseudonym = s.d.users[row];
    result.users[row].queries = queries.size();
    found[row] = gather_candidates(queries, s.client, s.cfg.search_limit);
    result.users[row].candidates = found[row].size();
  });

  std::vector<UserId> all;
  for (const auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  parallel_for(all.size(), s.cfg.jobs, [&](std::size_t i) { s.candidate(all[i]); });
  if (s.metric == Metric::ada) s.prepare_ada();

  parallel_for(n, s.cfg.jobs, [&](std::size_t row) { result.users[row].ranked = s.rank(row, found[row]); });
  result.budget = s.client.totals();
  return result;
}

void write_mapping(std::ostream& out, const AttackResult& result) {
  out << "pseudonym,rank,candidate,sim_total,sim_struct,sim_text,sim_neighbor\n";
  for (const auto& u : result.users) {
    if (u.ranked.empty()) {
      out << u.pseudonym.value << ",,,,,,\n";
      continue;
    }
    for (std::size_t r = 0; r < u.ranked.size(); ++r) {
      const auto& c = u.ranked[r];
      out << u.pseudonym.value << ',' << r + 1 << ',' << c.candidate.value << ','
          << io::format_real(c.sim_total) << ',' << io::format_real(c.sim_struct) << ','
          << io::format_real(c.sim_text) << ',' << io::format_real(c.sim_neighbor) << '\n';
    }
  }
}

}  // namespace hetanon::attack
