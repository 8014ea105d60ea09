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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "hetanon/attack.hpp"
#include "hetanon/target.hpp"
#include "oracles.hpp"

using namespace hetanon;
using namespace hetanon::attack;
using target::SearchQuery;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

std::vector<double> row_of(const PostWordMatrix& x, std::size_t r) {
  std::vector<double> out(x.cols());
  x.copy_row(r, out);
  return out;
}

SparseVector sparse_of(const std::vector<double>& v) {
  std::vector<std::uint32_t> idx;
  std::vector<double> val;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      idx.push_back(static_cast<std::uint32_t>(i));
      val.push_back(v[i]);
    }
  }
  return SparseVector(std::move(idx), std::move(val));
}

std::vector<double> random_sparse_dense(std::mt19937_64& rng, std::size_t n, std::size_t nnz,
                                        bool signed_values = false) {
  std::uniform_real_distribution<double> d(signed_values ? -2.0 : 0.0, 3.0);
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < nnz; ++i) v[rng() % n] = d(rng);
  return v;
}

struct Fixture {
  SocialNetwork net;
  anon::StructuralRelease rel;
  AnonymizedDataset data;
  GroundTruth truth;
  std::unique_ptr<target::TargetNetwork> target;

  explicit Fixture(SocialNetwork n, std::uint64_t seed = 1) : net(std::move(n)) {
    data = fixtures::naive_release(net, seed, &rel);
    truth = rel.ground_truth(net);
    target = std::make_unique<target::TargetNetwork>(net);
  }
  std::size_t row_of_true(UserId id) const {
    for (const auto& [p, t] : truth.pairs()) {
      if (t == id) return *data.find(p);
    }
    throw NotFoundError("no such user");
  }
  UserId pseudonym_of(UserId id) const { return data.users[row_of_true(id)]; }
};

double rate(const AttackResult& r, const GroundTruth& truth) {
  std::size_t hits = 0;
  for (const auto& u : r.users) {
    if (!u.ranked.empty() && u.ranked[0].candidate == truth.true_id(u.pseudonym)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(r.users.size());
}

// Ten users on a path-like graph used by the baseline examples.
SocialNetwork ten_node_graph() {
  std::vector<std::vector<std::string>> posts;
  for (int i = 0; i < 10; ++i) posts.push_back({"topic" + std::to_string(i) + " shared words"});
  return fixtures::make_network(
      10, {{0, 1}, {0, 2}, {3, 0}, {1, 2}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {4, 0}},
      posts);
}

}  // namespace

TEST_CASE("post score") {
  CHECK(post_score(SparseVector{}, 4) == 0.0);
  SparseVector v({2}, {2 * std::log(2.0)});
  CHECK(post_score(v, 4) == doctest::Approx(0.3466).epsilon(1e-4));
  CHECK(post_score(v, 4) == 2 * std::log(2.0) / 4);
}

TEST_CASE("post scores rank like the row-sum oracle") {
  auto g = fixtures::generated(60, 4);
  auto d = fixtures::naive_release(g.network, 2);
  anon::DPConfig dp;
  auto noised = d;
  anon::apply_text_method(noised, anon::TextMethod::dp, dp);
  for (const auto* x : {&d.post_word, &noised.post_word}) {
    for (std::size_t r = 0; r < x->rows(); ++r) {
      CHECK(close(post_score(*x, r), oracle::mean(row_of(*x, r)), 1e-12 * std::max(1.0, std::fabs(oracle::mean(row_of(*x, r))))));
    }
  }
}

TEST_CASE("top revealing posts") {
  auto g = fixtures::generated(80, 7);
  auto d = fixtures::naive_release(g.network, 3);
  std::size_t checked = 0;
  for (std::size_t u = 0; u < d.users.size(); ++u) {
    auto posts = d.user_post.posts_of(u);
    if (posts.size() == 1) {
      CHECK(top_revealing(d, u, 10) == std::vector<std::size_t>{posts[0]});
    }
    CHECK(top_revealing(d, u, 0).empty());
    std::vector<std::pair<double, std::size_t>> oracle_order;
    for (std::uint32_t p : posts) oracle_order.emplace_back(oracle::mean(row_of(d.post_word, p)), p);
    // Posts with the same words in any order tie; summation order may move the last bit.
    std::sort(oracle_order.begin(), oracle_order.end(), [](const auto& a, const auto& b) {
      if (std::fabs(a.first - b.first) > 1e-12 * std::fabs(a.first)) return a.first > b.first;
      return a.second < b.second;
    });
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, posts.size()); ++i) want.push_back(oracle_order[i].second);
    CHECK(top_revealing(d, u, 5) == want);
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("top revealing on a user with twenty posts") {
  std::vector<std::string> posts;
  for (int i = 0; i < 20; ++i) {
    std::string p;
    for (int j = 0; j <= i % 7; ++j) p += "w" + std::to_string((i * 7 + j * 3) % 23) + " ";
    posts.push_back(p);
  }
  Fixture f(fixtures::make_network(2, {}, {posts, {"w1 w2 other"}}));
  const std::size_t row = f.row_of_true(UserId{0});
  auto got = top_revealing(f.data, row, 20);
  REQUIRE(got.size() == 20);
  for (std::size_t i = 1; i < got.size(); ++i) {
    const double a = post_score(f.data.post_word, got[i - 1]);
    const double b = post_score(f.data.post_word, got[i]);
    CHECK((a > b || (a == b && got[i - 1] < got[i])));
  }
  SocialNetwork empty_user = fixtures::make_network(2, {}, {{"solitary"}, {}});
  Fixture e(empty_user);
  CHECK_THROWS_AS(top_revealing(e.data, e.row_of_true(UserId{1}), 3), Error);
}

TEST_CASE("query words exceed the row mean") {
  Vocabulary vocab({"w0", "w1", "w2", "w3"});
  auto uniform = PostWordMatrix::from_dense(1, 4, {1, 1, 1, 1});
  CHECK_FALSE(build_query(uniform, 0, vocab).has_value());
  auto peak = PostWordMatrix::from_dense(1, 4, {4, 0, 0, 0});
  CHECK(build_query(peak, 0, vocab)->words == std::vector<std::string>{"w0"});
  auto sparse_peak = PostWordMatrix::from_sparse(4, {SparseVector({0}, {4.0})});
  CHECK(build_query(sparse_peak, 0, vocab)->words == std::vector<std::string>{"w0"});
  auto zero = PostWordMatrix::from_sparse(4, {SparseVector{}});
  CHECK_FALSE(build_query(zero, 0, vocab).has_value());
  auto negative = PostWordMatrix::from_sparse(4, {SparseVector({1}, {-4.0})});
  CHECK(build_query(negative, 0, vocab)->words == std::vector<std::string>{"w0", "w2", "w3"});
}

TEST_CASE("query words on noised rows match the threshold oracle") {
  auto g = fixtures::generated(50, 9);
  auto d = fixtures::naive_release(g.network, 1);
  anon::DPConfig dp;
  dp.rng_seed = 5;
  anon::apply_text_method(d, anon::TextMethod::dp, dp);
  for (std::size_t r = 0; r < d.post_word.rows(); ++r) {
    const auto row = row_of(d.post_word, r);
    std::vector<std::string> want;
    for (std::size_t c : oracle::above_mean(row)) want.push_back(d.vocab.word(c));
    auto q = build_query(d.post_word, r, d.vocab);
    if (want.empty()) {
      CHECK_FALSE(q.has_value());
    } else {
      REQUIRE(q.has_value());
      CHECK(q->words == want);
    }
  }
}

TEST_CASE("query sets and post order are scale invariant") {
  auto g = fixtures::generated(40, 2);
  auto d = fixtures::naive_release(g.network, 2);
  anon::apply_text_method(d, anon::TextMethod::dp, {});
  for (double factor : {4.0, 0.25, 3.0}) {
    auto scaled = d;
    std::vector<double> v(d.post_word.dense_values().begin(), d.post_word.dense_values().end());
    for (double& x : v) x *= factor;
    scaled.post_word = PostWordMatrix::from_dense(d.post_word.rows(), d.post_word.cols(), std::move(v));
    for (std::size_t u = 0; u < d.users.size(); ++u) {
      CHECK(top_revealing(d, u, 10) == top_revealing(scaled, u, 10));
    }
    for (std::size_t r = 0; r < d.post_word.rows(); ++r) {
      CHECK(build_query(d.post_word, r, d.vocab) == build_query(scaled.post_word, r, d.vocab));
    }
  }
}

TEST_CASE("candidates are the union of search results") {
  auto net = fixtures::make_network(10, {}, {{"apple"}, {"pear"}, {"plum"}, {"apple kiwi"}, {"fig"},
                                             {"apple kiwi"}, {"x"}, {"y"}, {"z"}, {"kiwi"}});
  target::TargetNetwork t(net, target::MatchMode::all_words);
  target::TargetClient c(t);
  std::vector<SearchQuery> qs{SearchQuery::of({"apple", "kiwi"}), SearchQuery::of({"kiwi"})};
  CHECK(c.search(qs[0]) == std::vector<UserId>{UserId{3}, UserId{5}});
  CHECK(gather_candidates(qs, c, 100) == std::vector<UserId>{UserId{3}, UserId{5}, UserId{9}});
  CHECK(gather_candidates({}, c, 100).empty());
  CHECK(c.totals().search_calls == 3);
}

TEST_CASE("generated users gather the oracle union") {
  auto g = fixtures::generated(120, 15);
  Fixture f(g.network, 3);
  target::TargetClient client(*f.target);
  Attack a(f.data, client, AttackConfig{}, Metric::simple);
  std::vector<std::vector<oracle::Doc>> docs(f.net.size());
  for (std::size_t u = 0; u < f.net.size(); ++u) {
    for (const Post& p : f.net.posts[u]) docs[u].push_back(p.tokens);
  }
  for (std::size_t row = 0; row < 30; ++row) {
    auto qs = a.queries_for(row);
    std::set<UserId> want;
    for (const auto& q : qs) {
      for (std::size_t u : oracle::search(docs, q.words, 100, false)) want.insert(f.net.users[u]);
    }
    CHECK(gather_candidates(qs, client, 100) == std::vector<UserId>(want.begin(), want.end()));
  }
}

TEST_CASE("structural feature binning") {
  CHECK(struct_feature({}, {}, 7, 50) == StructFeature(14, 0.0));
  std::vector<std::size_t> deg{3, 52, 49};
  auto f = struct_feature(deg, deg, 7, 50);
  StructFeature want(14, 0.0);
  want[0] = 2;
  want[1] = 1;
  want[7] = 2;
  want[8] = 1;
  CHECK(f == want);
  std::vector<std::size_t> big{349, 350, 10000};
  CHECK(struct_feature(big, {}, 7, 50)[6] == 3.0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> a(rng() % 30), b(rng() % 30);
    for (auto& x : a) x = rng() % 500;
    for (auto& x : b) x = rng() % 500;
    const std::size_t bins = 1 + rng() % 9, width = 1 + rng() % 80;
    CHECK(struct_feature(a, b, bins, width) == oracle::bin_degrees(a, b, bins, width));
  }
}

TEST_CASE("candidate text feature") {
  Vocabulary vocab({"alpha", "beta", "gamma"});
  std::vector<double> idf{0.5, 1.5, 2.0};
  CHECK(text_feature({}, vocab, idf).empty());

  auto net = fixtures::make_network(3, {}, {{"alpha beta beta", "gamma @h1 delta"}, {"beta"}, {"alpha"}});
  auto doc = text_feature(net.posts[0], vocab, idf);
  CHECK(doc.get(0) == 0.5);
  CHECK(doc.get(1) == 3.0);
  CHECK(doc.get(2) == 2.0);

  Fixture f(fixtures::generated(60, 3).network);
  auto space = TextSpace::of(f.data);
  for (std::size_t u = 0; u < 10; ++u) {
    const auto& post = f.net.posts[u][0];
    auto v = text_feature(std::span<const Post>(&post, 1), f.data.vocab, space.idf);
    const std::size_t row = f.row_of_true(f.net.users[u]);
    const std::size_t p = f.data.user_post.posts_of(row)[0];
    CHECK(close(cosine(v, f.data.post_word.sparse_row(p)), 1.0));
  }
}

TEST_CASE("cosine conventions") {
  std::vector<double> a{1, 2, 3}, z{0, 0, 0}, o{-3, 0, 1};
  CHECK(close(cosine(a, a), 1.0));
  CHECK(cosine(a, z) == 0.0);
  CHECK(cosine(a, o) == 0.0);
  CHECK(cosine(sparse_of(a), sparse_of(z)) == 0.0);
  CHECK(close(cosine(sparse_of(a), sparse_of(o)), oracle::cosine(a, o)));
}

TEST_CASE("similarities match the direct formulas") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 20 + rng() % 30;
    const bool noised = trial % 2 == 1;
    UserSide u;
    CandidateSide c;
    u.structure = random_sparse_dense(rng, 14, 6);
    c.structure = random_sparse_dense(rng, 14, 6);
    u.neighbor_structure = random_sparse_dense(rng, 14, 8);
    c.neighbor_structure = random_sparse_dense(rng, 14, 8);
    oracle::Matrix up, un;
    for (std::size_t i = 0; i < 1 + rng() % 5; ++i) {
      up.push_back(random_sparse_dense(rng, dim, 5, noised));
      if (noised) {
        u.posts.emplace_back(up.back());
      } else {
        u.posts.emplace_back(sparse_of(up.back()));
      }
    }
    for (std::size_t i = 0; i < rng() % 4; ++i) {
      un.push_back(random_sparse_dense(rng, dim, 5));
      u.neighbor_texts.push_back(std::make_shared<TextVector>(sparse_of(un.back())));
    }
    const auto ct = random_sparse_dense(rng, dim, 7);
    const auto cn = random_sparse_dense(rng, dim, 9);
    c.text = sparse_of(ct);
    c.neighbor_text = sparse_of(cn);
    const double alpha = static_cast<double>(rng() % 101) / 100.0;
    const double beta = static_cast<double>(rng() % 101) / 100.0;

    const double s = oracle::sim_simple(u.structure, c.structure, up, ct, alpha);
    const double n = oracle::sim_neighbors(u.neighbor_structure, c.neighbor_structure, un, cn, alpha);
    CHECK(close(sim_simple(u, c, alpha), s));
    CHECK(close(sim_neighbors(u, c, alpha), n));
    auto total = sim_total(u, c, alpha, beta);
    CHECK(close(total.sim_total, oracle::sim_total(s, n, beta)));
    CHECK(total.sim_total == beta * (alpha * total.sim_struct + (1 - alpha) * total.sim_text) +
                                 (1 - beta) * total.sim_neighbor);
    CHECK(sim_total(u, c, alpha, 1.0).sim_total == sim_simple(u, c, alpha));
    CHECK(sim_total(u, c, alpha, 0.0).sim_total == sim_neighbors(u, c, alpha));
    for (double x : {total.sim_struct, total.sim_text, total.sim_neighbor, total.sim_total}) {
      CHECK(x >= -1.0 - 1e-12);
      CHECK(x <= 1.0 + 1e-12);
    }
    if (!noised) CHECK(total.sim_text >= 0.0);
  }
}

TEST_CASE("identical and orthogonal features") {
  UserSide u;
  CandidateSide c;
  u.structure = {1, 2, 0, 3};
  c.structure = u.structure;
  u.posts.emplace_back(SparseVector({0, 2}, {1.0, 2.0}));
  c.text = SparseVector({0, 2}, {1.0, 2.0});
  CHECK(close(sim_simple(u, c, 0.5), 1.0));
  c.structure = {0, 0, 5, 0};
  c.text = SparseVector({1}, {1.0});
  CHECK(sim_simple(u, c, 0.5) == 0.0);
}

TEST_CASE("neighbor similarity on a shared single neighbor") {
  auto net = fixtures::make_network(
      4, {{0, 2}, {1, 3}}, {{"lonely words"}, {"other words"}, {"neighbor post text", "more text"}, {"isolated stuff"}});
  Fixture f(net);
  target::TargetClient client(*f.target);
  Attack a(f.data, client, AttackConfig{}, Metric::improved);
  auto u = a.user_side(f.row_of_true(UserId{0}));
  const auto& c = a.candidate_side(UserId{0});
  CHECK(close(sim_neighbors(u, c, 0.5), 1.0));

  auto iso = fixtures::make_network(3, {{0, 1}}, {{"a1 words"}, {"b1 words"}, {"c1 words"}});
  Fixture g(iso);
  target::TargetClient client2(*g.target);
  Attack b(g.data, client2, AttackConfig{}, Metric::improved);
  auto lone = b.user_side(g.row_of_true(UserId{2}));
  CHECK(sim_neighbors(lone, b.candidate_side(UserId{2}), 0.5) == 0.0);
}

TEST_CASE("a globally unique word leads back to its author") {
  auto net = fixtures::make_network(
      6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}},
      {{"common chatter"}, {"common chatter today"}, {"zebra stripes"}, {"common words"}, {"chatter words"}, {"today words"}});
  Fixture f(net);
  for (Metric m : all_metrics()) {
    target::TargetClient client(*f.target);
    AttackConfig cfg;
    Attack a(f.data, client, cfg, m, draw_seed_map(f.truth, 2, 1));
    auto ranked = a.deanonymize(f.pseudonym_of(UserId{2}));
    REQUIRE(!ranked.empty());
    CHECK(ranked[0].candidate == UserId{2});
  }
  target::TargetClient client(*f.target);
  AttackConfig none;
  none.top_h = 0;
  Attack zero(f.data, client, none, Metric::improved);
  CHECK(zero.deanonymize(f.pseudonym_of(UserId{2})).empty());
  CHECK_THROWS_AS(zero.deanonymize(UserId{123456789012}), NotFoundError);
}

TEST_CASE("self retrieval through unique words") {
  auto g = fixtures::generated(150, 21);
  Fixture f(g.network, 4);
  std::map<std::string, std::set<std::size_t>> owners;
  for (std::size_t u = 0; u < f.net.size(); ++u) {
    for (const Post& p : f.net.posts[u]) {
      for (const auto& t : p.tokens) owners[t].insert(u);
    }
  }
  target::TargetClient client(*f.target);
  AttackConfig cfg;
  cfg.k_posts = 1000;
  Attack a(f.data, client, cfg, Metric::simple);
  std::size_t checked = 0;
  for (std::size_t u = 0; u < f.net.size(); ++u) {
    bool unique = false;
    for (const Post& p : f.net.posts[u]) {
      for (const auto& t : p.tokens) unique |= owners[t].size() == 1;
    }
    if (!unique) continue;
    auto found = gather_candidates(a.queries_for(f.row_of_true(f.net.users[u])), client, 100);
    CHECK(std::binary_search(found.begin(), found.end(), f.net.users[u]));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("narayanan counts seed-mapped common neighbors") {
  SeedMap seeds{{UserId{101}, UserId{1}}, {UserId{102}, UserId{2}}, {UserId{105}, UserId{5}}};
  std::vector<UserId> un{UserId{101}, UserId{102}, UserId{103}, UserId{104}};
  std::vector<UserId> cn{UserId{1}, UserId{3}, UserId{5}, UserId{7}};
  CHECK(narayanan_count(un, cn, seeds) == 1);
  CHECK(narayanan_similarity(un, cn, seeds) == 0.25);
  CHECK(narayanan_similarity(un, cn, {}) == 0.0);
  std::vector<UserId> unmapped{UserId{103}};
  CHECK(narayanan_similarity(unmapped, cn, seeds) == 0.0);
  std::vector<UserId> all_u{UserId{101}, UserId{102}}, all_c{UserId{1}, UserId{2}};
  CHECK(narayanan_similarity(all_u, all_c, seeds) == 1.0);
}

TEST_CASE("baseline scores on a ten-node graph") {
  Fixture f(ten_node_graph(), 5);
  SeedMap seeds;
  for (std::uint64_t t : {1, 6, 9}) seeds.emplace_back(f.pseudonym_of(UserId{t}), UserId{t});
  const std::size_t row = f.row_of_true(UserId{0});

  target::TargetClient c1(*f.target);
  Attack nara(f.data, c1, AttackConfig{}, Metric::narayanan, seeds);
  // Neighbors of 0 are {1,2,3,4}; only 1 is a seed.
  CHECK(nara.score(row, nara.candidate_side(UserId{0})).sim_total == 0.25);
  // Neighbors of 2 are {0,1,4}.
  CHECK(close(nara.score(row, nara.candidate_side(UserId{2})).sim_total, 1 / std::sqrt(12.0)));
  // Neighbors of 7 are {6,8}.
  CHECK(nara.score(row, nara.candidate_side(UserId{7})).sim_total == 0.0);

  target::TargetClient c2(*f.target);
  Attack ada(f.data, c2, AttackConfig{}, Metric::ada, seeds);
  // Node 0: in 2, out 2; hops to seeds 1, 6, 9 are 1, 3, 6.
  CHECK(close(ada.score(row, ada.candidate_side(UserId{0})).sim_total, (1 + 1 + 0.25) / 3));
  // Node 2: in 2, out 1; hops 1, 3, 6.
  CHECK(close(ada.score(row, ada.candidate_side(UserId{2})).sim_total,
              (0.75 + 1 + 1 / std::sqrt(12.0)) / 3));
  // Node 7: in 1, out 1; hops 5, 1, 2.
  CHECK(close(ada.score(row, ada.candidate_side(UserId{7})).sim_total,
              (0.5 + 0.32 / std::sqrt(0.8) + 0) / 3));
}

TEST_CASE("ada components") {
  CHECK(hop_proximity(0) == 1.0);
  CHECK(hop_proximity(1) == 0.8);
  CHECK(hop_proximity(4) == doctest::Approx(0.2));
  CHECK(hop_proximity(5) == 0.0);
  CHECK(hop_proximity(std::nullopt) == 0.0);
  CHECK(degree_closeness({3, 5}, {3, 5}) == 1.0);
  CHECK(degree_closeness({0, 5}, {0, 5}) == 1.0);
  CHECK(degree_closeness({0, 0}, {3, 5}) == 0.0);
  CHECK(degree_closeness({2, 4}, {4, 2}) == 0.5);
  std::vector<double> p{0.8, 0.4, 0};
  CHECK(close(ada_similarity({2, 2}, {2, 2}, p, p, 0.0), 2.0 / 3));
  std::vector<double> none{0, 0, 0};
  CHECK(ada_similarity({0, 0}, {2, 2}, none, p, 0.0) == 0.0);
}

TEST_CASE("seed maps are drawn from the ground truth") {
  GroundTruth t({{UserId{10}, UserId{0}}, {UserId{11}, UserId{1}}, {UserId{12}, UserId{2}}});
  auto s = draw_seed_map(t, 2, 4);
  CHECK(s.size() == 2);
  for (const auto& [p, id] : s) CHECK(t.true_id(p) == id);
  CHECK(draw_seed_map(t, 2, 4) == s);
  CHECK(draw_seed_map(t, 10, 4).size() == 3);
}

TEST_CASE("attacks are deterministic and independent of the worker count") {
  auto g = fixtures::generated(120, 5);
  Fixture f(g.network, 6);
  anon::apply_text_method(f.data, anon::TextMethod::dp, {});
  for (Metric m : all_metrics()) {
    std::string out[3];
    target::BudgetTotals budget[3];
    for (int i = 0; i < 3; ++i) {
      target::TargetClient client(*f.target);
      AttackConfig cfg;
      cfg.jobs = i == 2 ? 4 : 1;
      Attack a(f.data, client, cfg, m, draw_seed_map(f.truth, 20, 3));
      auto r = a.run();
      std::ostringstream s;
      write_mapping(s, r);
      out[i] = s.str();
      budget[i] = r.budget;
    }
    CHECK(out[0] == out[1]);
    CHECK(out[0] == out[2]);
    CHECK(budget[0] == budget[2]);
  }
}

TEST_CASE("improved scoring is at least as good as simple on a clean release") {
  auto g = fixtures::generated(100, 31);
  Fixture f(g.network, 2);
  double rates[2];
  int i = 0;
  for (Metric m : {Metric::improved, Metric::simple}) {
    target::TargetClient client(*f.target);
    Attack a(f.data, client, AttackConfig{}, m);
    rates[i++] = rate(a.run(), f.truth);
  }
  MESSAGE("improved " << rates[0] << ", simple " << rates[1]);
  CHECK(rates[0] >= rates[1]);
  CHECK(rates[0] >= 0.8);
}

TEST_CASE("mapping csv layout") {
  AttackResult r;
  r.users.push_back({UserId{5}, 1, 0, {}});
  CandidateScore s;
  s.candidate = UserId{9};
  s.sim_total = 0.5;
  r.users.push_back({UserId{6}, 2, 3, {s}});
  std::ostringstream out;
  write_mapping(out, r);
  CHECK(out.str() ==
        "pseudonym,rank,candidate,sim_total,sim_struct,sim_text,sim_neighbor\n"
        "5,,,,,,\n"
        "6,1,9,0.5,0,0,0\n");
}

TEST_CASE("metric names and config validation") {
  for (Metric m : all_metrics()) CHECK(parse_metric(to_string(m)) == m);
  CHECK_THROWS_AS(parse_metric("guess"), ConfigError);
  AttackConfig bad;
  bad.alpha = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
