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

#include "hetanon/datagen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "hetanon/common.hpp"
#include "hetanon/text.hpp"

namespace hetanon::datagen {

namespace {

constexpr char kConsonants[] = "bdfgklmnprstvz";
constexpr char kVowels[] = "aeiou";
constexpr std::size_t kSyllables = (sizeof(kConsonants) - 1) * (sizeof(kVowels) - 1);

// Fillers sprinkled into raw text; all are on the English stoplist.
constexpr const char* kFillers[] = {"the", "and", "of", "to", "a", "in", "is", "it",
                                    "for", "with", "on", "this", "my", "so", "at"};

std::string handle_for(std::size_t i) { return "usr" + std::to_string(i) + "q"; }

std::string random_slug(Rng& rng, std::size_t len) {
  static constexpr char kAlnum[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(kAlnum[uniform_index(rng, sizeof(kAlnum) - 1)]);
  return s;
}

std::size_t uniform_in(Rng& rng, Range r) {
  return r.min + static_cast<std::size_t>(uniform_index(rng, r.max - r.min + 1));
}

// Zipf-like rank sampler over a block of words, via a cumulative table.
class RankSampler {
 public:
  RankSampler(std::size_t n, double exponent) : cdf_(n) {
    double total = 0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cdf_[r] = total;
    }
    for (double& c : cdf_) c /= total;
  }
  std::size_t operator()(Rng& rng) const {
    double u = uniform_unit(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

std::string synthetic_word(std::size_t i) {
  std::string w;
  for (int k = 0; k < 3; ++k) {
    std::size_t s = i % kSyllables;
    i /= kSyllables;
    w.push_back(kConsonants[s / (sizeof(kVowels) - 1)]);
    w.push_back(kVowels[s % (sizeof(kVowels) - 1)]);
  }
  // Beyond 3 syllables the index keeps the word unique.
  if (i > 0) w += std::to_string(i);
  return w;
}

void GenConfig::validate() const {
  if (n_users < 1) throw ConfigError("n_users must be at least 1");
  if (n_topics < 1) throw ConfigError("n_topics must be at least 1");
  if (posts_per_user.min < 1) throw ConfigError("every user needs at least one post");
  if (posts_per_user.min > posts_per_user.max) throw ConfigError("posts_per_user range is empty");
  if (words_per_post.min < 1) throw ConfigError("words_per_post.min must be at least 1");
  if (words_per_post.min > words_per_post.max) throw ConfigError("words_per_post range is empty");
  if (vocab_size < words_per_post.max) {
    throw ConfigError("vocab_size must be at least words_per_post.max");
  }
  if (vocab_size < n_topics) throw ConfigError("vocab_size must be at least n_topics");
  if (!(topic_mix_concentration > 0)) throw ConfigError("topic_mix_concentration must be positive");
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must be in [0, 1]");
  };
  unit(homophily_strength, "homophily_strength");
  unit(reciprocity, "reciprocity");
  unit(signature_rate, "signature_rate");
  unit(pii_rate, "pii_rate");
}

GeneratedNetwork generate(const GenConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  const std::size_t n = config.n_users;

  GeneratedNetwork out;
  SocialNetwork& net = out.network;
  net.users.resize(n);
  net.handles.resize(n);
  net.posts.resize(n);
  out.topics.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    net.users[i] = UserId{i};
    net.handles[i] = handle_for(i);
    out.topics[i] = static_cast<std::uint32_t>(uniform_index(rng, config.n_topics));
  }

  // Edges: users arrive in index order and attach to earlier users with
  // probability proportional to in-degree + 1. Urns hold each node once per
  // unit of weight, so a uniform draw from an urn is degree-proportional.
  std::unordered_set<std::uint64_t> edge_keys;
  std::vector<std::uint32_t> global_urn;
  std::vector<std::vector<std::uint32_t>> topic_urn(config.n_topics);
  auto add_to_urns = [&](std::uint32_t v) {
    global_urn.push_back(v);
    topic_urn[out.topics[v]].push_back(v);
  };
  auto add_edge = [&](std::uint32_t from, std::uint32_t to) {
    if (from == to) return false;
    if (!edge_keys.insert((static_cast<std::uint64_t>(from) << 32) | to).second) return false;
    net.edges.push_back({UserId{from}, UserId{to}});
    add_to_urns(to);
    return true;
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::size_t links = std::min<std::size_t>(config.m_attach, v);
    std::size_t made = 0;
    for (std::size_t attempt = 0; made < links && attempt < 20 * links; ++attempt) {
      const auto& same = topic_urn[out.topics[v]];
      const bool homophilous = !same.empty() && bernoulli(rng, config.homophily_strength);
      const auto& urn = homophilous ? same : global_urn;
      std::uint32_t target = urn[uniform_index(rng, urn.size())];
      if (!add_edge(v, target)) continue;
      ++made;
      if (bernoulli(rng, config.reciprocity)) add_edge(target, v);
    }
    add_to_urns(v);
  }
  std::sort(net.edges.begin(), net.edges.end());

  // Posts.
  const std::size_t block = config.vocab_size / config.n_topics;
  const RankSampler topic_sampler(block, 1.0);
  const double own_topic = config.topic_mix_concentration / (config.topic_mix_concentration + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = out.topics[i] * block;
    std::vector<std::size_t> signature;
    for (std::size_t s = 0; s < config.signature_words; ++s) {
      signature.push_back(base + uniform_index(rng, block));
    }
    const std::size_t n_posts = uniform_in(rng, config.posts_per_user);
    for (std::size_t p = 0; p < n_posts; ++p) {
      const std::size_t n_words = uniform_in(rng, config.words_per_post);
      std::vector<std::string> words;
      for (std::size_t w = 0; w < n_words; ++w) {
        std::size_t slot;
        if (!signature.empty() && bernoulli(rng, config.signature_rate)) {
          slot = signature[uniform_index(rng, signature.size())];
        } else if (bernoulli(rng, own_topic)) {
          slot = base + topic_sampler(rng);
        } else {
          slot = uniform_index(rng, config.vocab_size);
        }
        words.push_back(synthetic_word(slot));
      }

      std::string raw;
      std::vector<std::string> pii;
      auto append = [&raw](const std::string& s) {
        if (!raw.empty()) raw.push_back(' ');
        raw += s;
      };
      const bool with_pii = bernoulli(rng, config.pii_rate);
      if (with_pii && n > 1 && bernoulli(rng, 0.3)) {
        std::string m = "@" + handle_for(uniform_index(rng, n)) + ":";
        append("RT");
        append(m);
        pii.push_back(m);
      }
      for (std::size_t w = 0; w < words.size(); ++w) {
        std::string word = words[w];
        if (w == 0 && bernoulli(rng, 0.5)) word[0] = static_cast<char>(std::toupper(word[0]));
        append(word);
        if (bernoulli(rng, 0.3)) append(kFillers[uniform_index(rng, std::size(kFillers))]);
      }
      if (with_pii) {
        switch (uniform_index(rng, 3)) {
          case 0: {
            std::string m = "@" + handle_for(uniform_index(rng, n));
            append(m);
            pii.push_back(m);
            break;
          }
          case 1: {
            std::string url = "https://ex.co/" + random_slug(rng, 6);
            append(url);
            pii.push_back(url);
            break;
          }
          default: {
            std::string name = handle_for(uniform_index(rng, n));
            append("with " + name);
            pii.push_back(name);
            break;
          }
        }
      }
      raw += bernoulli(rng, 0.5) ? "!" : ".";

      Post post;
      post.author = net.users[i];
      post.raw = std::move(raw);
      net.posts[i].push_back(std::move(post));
      out.injected_pii.push_back(std::move(pii));
    }
  }
  const auto names = text::name_dictionary(net);
  for (auto& user_posts : net.posts) {
    for (Post& p : user_posts) p.tokens = text::strip_pii(p.raw, names);
  }
  return out;
}

}  // namespace hetanon::datagen
