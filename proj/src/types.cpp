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

#include "hetanon/types.hpp"

#include <algorithm>
#include <cassert>

#include "hetanon/common.hpp"
#include "hetanon/kernels.hpp"

namespace hetanon {

namespace {

template <typename T>
std::optional<std::size_t> sorted_find(const std::vector<T>& sorted, const T& key) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  if (it == sorted.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

std::optional<std::size_t> SocialNetwork::find(UserId id) const {
  return sorted_find(users, id);
}

std::size_t SocialNetwork::index_of(UserId id) const {
  auto i = find(id);
  if (!i) throw NotFoundError("unknown user " + std::to_string(id.value));
  return *i;
}

std::size_t SocialNetwork::post_count() const {
  std::size_t n = 0;
  for (const auto& p : posts) n += p.size();
  return n;
}

void SocialNetwork::validate() const {
  if (!std::is_sorted(users.begin(), users.end()) ||
      std::adjacent_find(users.begin(), users.end()) != users.end()) {
    throw Error("network users must be ascending and unique");
  }
  if (handles.size() != users.size()) throw Error("handles not aligned with users");
  if (posts.size() != users.size()) throw Error("posts not aligned with users");
  if (!std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error("network edges must be ascending and unique");
  }
  for (const Edge& e : edges) {
    if (e.from == e.to) throw Error("self-loop on user " + std::to_string(e.from.value));
    if (!find(e.from) || !find(e.to)) throw Error("edge endpoint outside user set");
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    for (const Post& p : posts[i]) {
      if (p.author != users[i]) throw Error("post filed under the wrong author");
    }
  }
}

SparseVector::SparseVector(std::vector<std::uint32_t> indices, std::vector<double> values)
    : indices_(std::move(indices)), values_(std::move(values)) {
  if (indices_.size() != values_.size()) throw Error("sparse vector size mismatch");
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i - 1] >= indices_[i]) throw Error("sparse vector indices not ascending");
  }
}

double SparseVector::get(std::uint32_t index) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

double SparseVector::sum() const { return kernels::sum(values_); }

double SparseVector::squared_norm() const { return kernels::squared_norm(values_); }

PostWordMatrix PostWordMatrix::from_sparse(std::size_t cols, std::vector<SparseVector> rows) {
  for (const auto& r : rows) {
    if (!r.empty() && r.indices().back() >= cols) throw Error("sparse row column out of range");
  }
  PostWordMatrix m;
  m.rows_ = rows.size();
  m.cols_ = cols;
  m.dense_ = false;
  m.sparse_rows_ = std::move(rows);
  return m;
}

PostWordMatrix PostWordMatrix::from_dense(std::size_t rows, std::size_t cols,
                                          std::vector<double> values) {
  if (values.size() != rows * cols) throw Error("dense matrix size mismatch");
  PostWordMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_ = true;
  m.dense_values_ = std::move(values);
  return m;
}

double PostWordMatrix::at(std::size_t r, std::size_t c) const {
  if (dense_) return dense_values_[r * cols_ + c];
  return sparse_rows_[r].get(static_cast<std::uint32_t>(c));
}

std::span<const double> PostWordMatrix::dense_row(std::size_t r) const {
  assert(dense_);
  return std::span<const double>(dense_values_).subspan(r * cols_, cols_);
}

const SparseVector& PostWordMatrix::sparse_row(std::size_t r) const {
  assert(!dense_);
  return sparse_rows_[r];
}

void PostWordMatrix::copy_row(std::size_t r, std::span<double> out) const {
  if (dense_) {
    std::copy_n(dense_values_.begin() + static_cast<std::ptrdiff_t>(r * cols_), cols_,
                out.begin());
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  const auto& row = sparse_rows_[r];
  for (std::size_t i = 0; i < row.nnz(); ++i) out[row.indices()[i]] = row.values()[i];
}

double PostWordMatrix::row_sum(std::size_t r) const {
  return dense_ ? kernels::sum(dense_row(r)) : sparse_rows_[r].sum();
}

double PostWordMatrix::row_squared_norm(std::size_t r) const {
  return dense_ ? kernels::squared_norm(dense_row(r)) : sparse_rows_[r].squared_norm();
}

UserPostMatrix::UserPostMatrix(std::size_t users, std::vector<std::uint32_t> owner)
    : users_(users), owner_(std::move(owner)), offsets_(users + 1, 0) {
  for (std::uint32_t o : owner_) {
    if (o >= users_) throw Error("post owner out of range");
    ++offsets_[o + 1];
  }
  for (std::size_t i = 0; i < users_; ++i) offsets_[i + 1] += offsets_[i];
  by_user_.resize(owner_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t j = 0; j < owner_.size(); ++j) {
    by_user_[cursor[owner_[j]]++] = static_cast<std::uint32_t>(j);
  }
}

std::span<const std::uint32_t> UserPostMatrix::posts_of(std::size_t user) const {
  return std::span<const std::uint32_t>(by_user_).subspan(
      offsets_[user], offsets_[user + 1] - offsets_[user]);
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], static_cast<std::uint32_t>(i)).second) {
      throw Error("duplicate vocabulary word '" + words_[i] + "'");
    }
  }
}

std::optional<std::uint32_t> Vocabulary::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> AnonymizedDataset::find(UserId id) const {
  return sorted_find(users, id);
}

void AnonymizedDataset::validate() const {
  if (!std::is_sorted(users.begin(), users.end()) ||
      std::adjacent_find(users.begin(), users.end()) != users.end()) {
    throw Error("dataset users must be ascending and unique");
  }
  if (user_post.rows() != users.size()) throw Error("W row count differs from user count");
  if (post_word.rows() != user_post.cols()) throw Error("X row count differs from W column count");
  if (post_word.cols() != vocab.size()) throw Error("X column count differs from vocabulary size");
  if (!doc_freq.empty() && doc_freq.size() != vocab.size()) {
    throw Error("document frequencies not aligned with vocabulary");
  }
  for (const Edge& e : edges) {
    if (e.from == e.to) throw Error("self-loop in released graph");
    if (!find(e.from) || !find(e.to)) throw Error("edge endpoint outside user set");
  }
  if (!std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error("dataset edges must be ascending and unique");
  }
}

GroundTruth::GroundTruth(std::vector<std::pair<UserId, UserId>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<UserId> images;
  images.reserve(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i > 0 && pairs_[i - 1].first == pairs_[i].first) {
      throw Error("pseudonym mapped twice: " + std::to_string(pairs_[i].first.value));
    }
    images.push_back(pairs_[i].second);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
    throw Error("ground truth is not injective");
  }
}

std::optional<UserId> GroundTruth::find(UserId pseudonym) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), pseudonym,
                             [](const auto& p, UserId k) { return p.first < k; });
  if (it == pairs_.end() || it->first != pseudonym) return std::nullopt;
  return it->second;
}

UserId GroundTruth::true_id(UserId pseudonym) const {
  auto t = find(pseudonym);
  if (!t) throw NotFoundError("pseudonym " + std::to_string(pseudonym.value) + " not in ground truth");
  return *t;
}

}  // namespace hetanon
