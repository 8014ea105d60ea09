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
// Small builders shared by the unit tests.

#ifndef HETANON_TESTS_FIXTURES_HPP_
#define HETANON_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hetanon/anon_struct.hpp"
#include "hetanon/anon_text.hpp"
#include "hetanon/datagen.hpp"
#include "hetanon/text.hpp"
#include "hetanon/types.hpp"

namespace fixtures {

using hetanon::UserId;

// Users 0..n-1, handles "h<i>", posts given as raw strings per user.
inline hetanon::SocialNetwork make_network(
    std::size_t n, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges,
    const std::vector<std::vector<std::string>>& raw_posts = {}) {
  hetanon::SocialNetwork net;
  net.users.resize(n);
  net.handles.resize(n);
  net.posts.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    net.users[i] = UserId{i};
    net.handles[i] = "h" + std::to_string(i);
  }
  for (auto [a, b] : edges) net.edges.push_back({UserId{a}, UserId{b}});
  std::sort(net.edges.begin(), net.edges.end());
  const auto names = hetanon::text::name_dictionary(net);
  for (std::size_t i = 0; i < n && i < raw_posts.size(); ++i) {
    for (const auto& raw : raw_posts[i]) {
      hetanon::Post p;
      p.author = net.users[i];
      p.raw = raw;
      p.tokens = hetanon::text::strip_pii(raw, names);
      net.posts[i].push_back(std::move(p));
    }
  }
  return net;
}

inline hetanon::datagen::GeneratedNetwork generated(std::size_t users, std::uint64_t seed) {
  hetanon::datagen::GenConfig cfg;
  cfg.n_users = users;
  cfg.rng_seed = seed;
  return hetanon::datagen::generate(cfg);
}

// Naive structural and naive textual release of a network.
inline hetanon::AnonymizedDataset naive_release(const hetanon::SocialNetwork& net,
                                                std::uint64_t seed,
                                                hetanon::anon::StructuralRelease* s_out = nullptr) {
  hetanon::anon::StructAnonConfig cfg;
  cfg.rng_seed = seed;
  auto s = hetanon::anon::anonymize_structure(net, cfg);
  auto d = hetanon::anon::assemble_release(net, s);
  if (s_out) *s_out = std::move(s);
  return d;
}

inline std::vector<std::vector<double>> dense(const hetanon::PostWordMatrix& x) {
  std::vector<std::vector<double>> out(x.rows(), std::vector<double>(x.cols()));
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) out[r][c] = x.at(r, c);
  }
  return out;
}

}  // namespace fixtures

#endif  // HETANON_TESTS_FIXTURES_HPP_
