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

// Post preprocessing and TF-IDF vectorization.
//
// Weights are raw term counts times the natural-log inverse document
// frequency, ln(M / n_t), with M and n_t counted over the whole corpus.

#ifndef HETANON_TEXT_HPP_
#define HETANON_TEXT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hetanon/types.hpp"

namespace hetanon::text {

using WordSet = std::unordered_set<std::string>;
using TokenList = std::vector<std::string>;

// The shipped English stoplist (data/stopwords_en.txt).
const WordSet& english_stopwords();

// Splits on non-alphanumeric characters and lowercases.
TokenList tokenize(std::string_view text);

// Removes mentions, URLs, retweet markers and known user names, then
// tokenizes and drops stopwords.
TokenList strip_pii(std::string_view raw, const WordSet& names = {},
                    const WordSet& stopwords = english_stopwords());

// Distinct non-stopword unigrams, ascending. Throws Error on an empty result.
Vocabulary build_vocab(std::span<const TokenList> posts,
                       const WordSet& stopwords = english_stopwords());

// n_t for every vocabulary word. Tokens outside the vocabulary are ignored.
std::vector<std::uint32_t> document_frequencies(std::span<const TokenList> posts,
                                                const Vocabulary& vocab);

// ln(M / n_t) per word. Throws Error if any n_t is zero.
std::vector<double> idf_weights(std::size_t post_count,
                                std::span<const std::uint32_t> doc_freq);

// TF-IDF of a single token list against precomputed idf weights.
SparseVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocab,
                       std::span<const double> idf);

// Post-word matrix X, one sparse row per post. Throws Error when a
// vocabulary word occurs in no post.
PostWordMatrix tfidf(std::span<const TokenList> posts, const Vocabulary& vocab);

// Canonical post order: users ascending, each user's posts oldest first.
std::vector<TokenList> canonical_post_tokens(const SocialNetwork& network);

// W over the canonical user and post order.
UserPostMatrix build_user_post_matrix(const SocialNetwork& network);

// Lowercased handles of all users, for strip_pii.
WordSet name_dictionary(const SocialNetwork& network);

}  // namespace hetanon::text

#endif  // HETANON_TEXT_HPP_
