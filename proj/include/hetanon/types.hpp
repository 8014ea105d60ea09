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

// Domain types shared by every module: users, posts, the raw social network,
// and the released (anonymized) dataset with its post-word and user-post
// matrices.

#ifndef HETANON_TYPES_HPP_
#define HETANON_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hetanon {

struct UserId {
  std::uint64_t value = 0;
  friend auto operator<=>(const UserId&, const UserId&) = default;
};

struct Edge {
  UserId from;
  UserId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Post {
  UserId author;
  // Unigrams after PII removal, lowercasing and stopword removal.
  std::vector<std::string> tokens;
  // Original text. Only present in the un-anonymized network.
  std::string raw;
  friend bool operator==(const Post&, const Post&) = default;
};

// The un-anonymized network: ground truth for experiments and the backing
// store of the simulated target platform.
struct SocialNetwork {
  std::vector<UserId> users;                // ascending
  std::vector<std::string> handles;         // screen names, aligned with users
  std::vector<Edge> edges;                  // ascending, unique, no self-loops
  std::vector<std::vector<Post>> posts;     // aligned with users, oldest first

  std::size_t size() const { return users.size(); }
  std::optional<std::size_t> find(UserId id) const;
  // Throws NotFoundError.
  std::size_t index_of(UserId id) const;
  std::size_t post_count() const;
  // Throws Error describing the first broken invariant.
  void validate() const;
  friend bool operator==(const SocialNetwork&, const SocialNetwork&) = default;
};

// Sorted-index sparse vector stored as parallel arrays.
class SparseVector {
 public:
  SparseVector() = default;
  // indices must be strictly ascending and sized like values.
  SparseVector(std::vector<std::uint32_t> indices, std::vector<double> values);

  std::size_t nnz() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::span<const std::uint32_t> indices() const { return indices_; }
  std::span<const double> values() const { return values_; }
  double get(std::uint32_t index) const;
  double sum() const;
  double squared_norm() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

// Post-word matrix X: one row per post, one column per vocabulary word.
// Clean TF-IDF releases are sparse; noised releases are dense.
class PostWordMatrix {
 public:
  PostWordMatrix() = default;
  static PostWordMatrix from_sparse(std::size_t cols, std::vector<SparseVector> rows);
  static PostWordMatrix from_dense(std::size_t rows, std::size_t cols,
                                   std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_dense() const { return dense_; }

  double at(std::size_t r, std::size_t c) const;
  // Only valid for dense matrices.
  std::span<const double> dense_row(std::size_t r) const;
  // Only valid for sparse matrices.
  const SparseVector& sparse_row(std::size_t r) const;
  void copy_row(std::size_t r, std::span<double> out) const;
  double row_sum(std::size_t r) const;
  double row_squared_norm(std::size_t r) const;
  std::span<const double> dense_values() const { return dense_values_; }

  friend bool operator==(const PostWordMatrix&, const PostWordMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool dense_ = false;
  std::vector<double> dense_values_;
  std::vector<SparseVector> sparse_rows_;
};

// User-post matrix W, stored as the owning user row of every post column.
// Each column therefore has exactly one nonzero entry equal to 1.
class UserPostMatrix {
 public:
  UserPostMatrix() = default;
  UserPostMatrix(std::size_t users, std::vector<std::uint32_t> owner);

  std::size_t rows() const { return users_; }
  std::size_t cols() const { return owner_.size(); }
  double at(std::size_t user, std::size_t post) const {
    return owner_[post] == user ? 1.0 : 0.0;
  }
  std::uint32_t owner(std::size_t post) const { return owner_[post]; }
  std::span<const std::uint32_t> owners() const { return owner_; }
  // Post columns of a user, ascending.
  std::span<const std::uint32_t> posts_of(std::size_t user) const;

  friend bool operator==(const UserPostMatrix& a, const UserPostMatrix& b) {
    return a.users_ == b.users_ && a.owner_ == b.owner_;
  }

 private:
  std::size_t users_ = 0;
  std::vector<std::uint32_t> owner_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> by_user_;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws Error on duplicate words.
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }
  std::optional<std::uint32_t> find(const std::string& word) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// What a data publisher releases: pseudonymized graph, post-word matrix X,
// user-post matrix W and the word feature space.
struct AnonymizedDataset {
  std::vector<UserId> users;            // pseudonyms ascending; row i of W
  std::vector<Edge> edges;              // over pseudonyms
  PostWordMatrix post_word;             // X, rows aligned with W's columns
  UserPostMatrix user_post;             // W
  Vocabulary vocab;
  // Corpus document frequency n_t of every vocabulary word, so that third
  // parties can vectorize new text in the same feature space.
  std::vector<std::uint32_t> doc_freq;
  // Free-form release metadata (method names, parameters).
  std::map<std::string, std::string> params;

  std::size_t post_count() const { return user_post.cols(); }
  std::optional<std::size_t> find(UserId id) const;
  void validate() const;
  friend bool operator==(const AnonymizedDataset&, const AnonymizedDataset&) = default;
};

// Bijection pseudonym -> true identity.
class GroundTruth {
 public:
  GroundTruth() = default;
  // Throws Error if the pairs are not a bijection.
  explicit GroundTruth(std::vector<std::pair<UserId, UserId>> pairs);

  std::size_t size() const { return pairs_.size(); }
  // Throws NotFoundError.
  UserId true_id(UserId pseudonym) const;
  std::optional<UserId> find(UserId pseudonym) const;
  // Sorted by pseudonym.
  const std::vector<std::pair<UserId, UserId>>& pairs() const { return pairs_; }
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  std::vector<std::pair<UserId, UserId>> pairs_;
};

}  // namespace hetanon

template <>
struct std::hash<hetanon::UserId> {
  std::size_t operator()(const hetanon::UserId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

#endif  // HETANON_TYPES_HPP_
