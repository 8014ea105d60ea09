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

// Synthetic social networks with topic-driven posts and homophilous,
// preferential-attachment follow edges.

#ifndef HETANON_DATAGEN_HPP_
#define HETANON_DATAGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hetanon/types.hpp"

namespace hetanon::datagen {

struct Range {
  std::size_t min = 0;
  std::size_t max = 0;
};

struct GenConfig {
  std::size_t n_users = 500;
  // Out-links created by each arriving user.
  std::size_t m_attach = 5;
  std::size_t n_topics = 10;
  std::size_t vocab_size = 400;
  Range posts_per_user{4, 10};
  Range words_per_post{2, 5};
  // Odds of drawing a word from the user's own topic rather than from the
  // whole vocabulary: c / (c + 1).
  double topic_mix_concentration = 6.0;
  // Probability that a new edge targets a same-topic user.
  double homophily_strength = 0.8;
  // Probability that a followed user follows back.
  double reciprocity = 0.3;
  // Share of tokens taken from the user's personal signature words.
  double signature_rate = 0.2;
  std::size_t signature_words = 4;
  // Probability that a post carries PII (mentions, links, names).
  double pii_rate = 0.3;
  std::uint64_t rng_seed = 1;

  // Throws ConfigError.
  void validate() const;
};

struct GeneratedNetwork {
  SocialNetwork network;
  // Topic of each user, aligned with network.users. Never released.
  std::vector<std::uint32_t> topics;
  // PII strings injected into each post, canonical post order.
  std::vector<std::vector<std::string>> injected_pii;
};

GeneratedNetwork generate(const GenConfig& config);

// Synthetic word for vocabulary slot i.
std::string synthetic_word(std::size_t i);

}  // namespace hetanon::datagen

#endif  // HETANON_DATAGEN_HPP_
