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

#include "hetanon/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hetanon/common.hpp"

namespace hetanon::text {

namespace {

// Generated from data/stopwords_en.txt at configure time.
constexpr const char* kStopwords[] = {
#include "stopwords_en.inc"
};

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

bool is_url(std::string_view chunk) {
  return chunk.find("://") != std::string_view::npos || starts_with_ci(chunk, "www.");
}

bool is_mention(std::string_view chunk) {
  std::size_t i = 0;
  while (i < chunk.size() && !is_alnum(chunk[i]) && chunk[i] != '@') ++i;
  return i < chunk.size() && chunk[i] == '@';
}

bool is_retweet_marker(std::string_view chunk) {
  return chunk.size() == 2 && lower(chunk[0]) == 'r' && lower(chunk[1]) == 't';
}

}  // namespace

const WordSet& english_stopwords() {
  static const WordSet words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

TokenList tokenize(std::string_view text) {
  TokenList out;
  std::string current;
  for (char c : text) {
    if (is_alnum(c)) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

TokenList strip_pii(std::string_view raw, const WordSet& names, const WordSet& stopwords) {
  TokenList out;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    std::size_t end = pos;
    while (end < raw.size() && !std::isspace(static_cast<unsigned char>(raw[end]))) ++end;
    std::string_view chunk = raw.substr(pos, end - pos);
    pos = end;
    if (chunk.empty() || is_mention(chunk) || is_url(chunk) || is_retweet_marker(chunk)) continue;
    for (std::string& tok : tokenize(chunk)) {
      if (names.count(tok) != 0 || stopwords.count(tok) != 0) continue;
      out.push_back(std::move(tok));
    }
  }
  return out;
}

Vocabulary build_vocab(std::span<const TokenList> posts, const WordSet& stopwords) {
  std::vector<std::string> words;
  {
    WordSet seen;
    for (const auto& post : posts) {
      for (const auto& tok : post) {
        if (stopwords.count(tok) == 0 && seen.insert(tok).second) words.push_back(tok);
      }
    }
  }
  if (words.empty()) throw Error("cannot build a vocabulary from an empty corpus");
  std::sort(words.begin(), words.end());
  return Vocabulary(std::move(words));
}

std::vector<std::uint32_t> document_frequencies(std::span<const TokenList> posts,
                                                const Vocabulary& vocab) {
  std::vector<std::uint32_t> df(vocab.size(), 0);
  std::vector<std::uint32_t> seen_in(vocab.size(), UINT32_MAX);
  for (std::size_t p = 0; p < posts.size(); ++p) {
    for (const auto& tok : posts[p]) {
      auto idx = vocab.find(tok);
      if (!idx || seen_in[*idx] == p) continue;
      seen_in[*idx] = static_cast<std::uint32_t>(p);
      ++df[*idx];
    }
  }
  return df;
}

std::vector<double> idf_weights(std::size_t post_count, std::span<const std::uint32_t> doc_freq) {
  std::vector<double> idf(doc_freq.size());
  for (std::size_t t = 0; t < doc_freq.size(); ++t) {
    if (doc_freq[t] == 0) {
      throw Error("vocabulary word #" + std::to_string(t) + " occurs in no post");
    }
    idf[t] = std::log(static_cast<double>(post_count) / static_cast<double>(doc_freq[t]));
  }
  return idf;
}

SparseVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocab,
                       std::span<const double> idf) {
  std::vector<std::uint32_t> hits;
  hits.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (auto idx = vocab.find(tok)) hits.push_back(*idx);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    indices.push_back(hits[i]);
    values.push_back(static_cast<double>(j - i) * idf[hits[i]]);
    i = j;
  }
  return SparseVector(std::move(indices), std::move(values));
}

PostWordMatrix tfidf(std::span<const TokenList> posts, const Vocabulary& vocab) {
  const auto df = document_frequencies(posts, vocab);
  const auto idf = idf_weights(posts.size(), df);
  std::vector<SparseVector> rows;
  rows.reserve(posts.size());
  for (const auto& post : posts) rows.push_back(vectorize(post, vocab, idf));
  return PostWordMatrix::from_sparse(vocab.size(), std::move(rows));
}

std::vector<TokenList> canonical_post_tokens(const SocialNetwork& network) {
  std::vector<TokenList> out;
  out.reserve(network.post_count());
  for (const auto& user_posts : network.posts) {
    for (const Post& p : user_posts) out.push_back(p.tokens);
  }
  return out;
}

UserPostMatrix build_user_post_matrix(const SocialNetwork& network) {
  std::vector<std::uint32_t> owner;
  owner.reserve(network.post_count());
  for (std::size_t u = 0; u < network.size(); ++u) {
    owner.insert(owner.end(), network.posts[u].size(), static_cast<std::uint32_t>(u));
  }
  return UserPostMatrix(network.size(), std::move(owner));
}

WordSet name_dictionary(const SocialNetwork& network) {
  WordSet names;
  for (const auto& h : network.handles) {
    for (auto& tok : tokenize(h)) names.insert(std::move(tok));
  }
  return names;
}

}  // namespace hetanon::text
