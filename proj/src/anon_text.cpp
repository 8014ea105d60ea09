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
#include "hetanon/anon_text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetanon/kernels.hpp"

namespace hetanon::anon {

namespace {

double sparse_l1(const SparseVector& a, const SparseVector& b) {
  auto ai = a.indices();
  auto av = a.values();
  auto bi = b.indices();
  auto bv = b.values();
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ai.size() || j < bi.size()) {
    if (j == bi.size() || (i < ai.size() && ai[i] < bi[j])) {
      total += std::fabs(av[i++]);
    } else if (i == ai.size() || bi[j] < ai[i]) {
      total += std::fabs(bv[j++]);
    } else {
      total += std::fabs(av[i++] - bv[j++]);
    }
  }
  return total;
}

double sparse_sensitivity(const PostWordMatrix& x) {
  const std::size_t m = x.rows();
  std::vector<double> norm1(m);
  for (std::size_t r = 0; r < m; ++r) {
    double s = 0.0;
    for (double v : x.sparse_row(r).values()) s += std::fabs(v);
    norm1[r] = s;
  }
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return norm1[a] > norm1[b]; });
  // |a - b|_1 <= |a|_1 + |b|_1, so pairs whose bound cannot beat the current
  // maximum are skipped. The slack covers rounding in the bound itself.
  auto bound = [&](std::uint32_t a, std::uint32_t b) { return (norm1[a] + norm1[b]) * (1 + 1e-9); };
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (bound(order[i], order[i + 1]) < best) break;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (bound(order[i], order[j]) < best) break;
      best = std::max(best, sparse_l1(x.sparse_row(order[i]), x.sparse_row(order[j])));
    }
  }
  return best;
}

double dense_sensitivity(const PostWordMatrix& x) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < x.rows(); ++i) {
    for (std::size_t j = i + 1; j < x.rows(); ++j) {
      best = std::max(best, kernels::l1_distance(x.dense_row(i), x.dense_row(j)));
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(TextMethod m) { return m == TextMethod::dp ? "dp" : "naive"; }

TextMethod parse_text_method(std::string_view name) {
  if (name == "naive") return TextMethod::naive;
  if (name == "dp") return TextMethod::dp;
  throw ConfigError("unknown textual method '" + std::string(name) + "'");
}

const std::vector<TextMethod>& all_text_methods() {
  static const std::vector<TextMethod> methods{TextMethod::naive, TextMethod::dp};
  return methods;
}

void DPConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be positive");
  if (sensitivity_override && !(*sensitivity_override > 0.0)) {
    throw ConfigError("sensitivity override must be positive");
  }
}

double sensitivity(const PostWordMatrix& x) {
  if (x.rows() < 2) throw Error("sensitivity needs at least two rows");
  return x.is_dense() ? dense_sensitivity(x) : sparse_sensitivity(x);
}

double laplace_from_uniform(double u, double scale) {
  if (u == 0.0) return 0.0;
  const double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::fabs(u));
}

double laplace_sample(double scale, Rng& rng) {
  double u;
  do {
    u = uniform_unit(rng) - 0.5;
  } while (u == -0.5);
  return laplace_from_uniform(u, scale);
}

PostWordMatrix dp_anonymize(const PostWordMatrix& x, const DPConfig& config) {
  config.validate();
  const double delta = config.sensitivity_override ? *config.sensitivity_override : sensitivity(x);
  if (!(delta > 0.0)) {
    throw Error("sensitivity is zero (all rows identical); supply an override");
  }
  const double scale = delta / config.epsilon;
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  std::vector<double> values(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::span<double> row(values.data() + r * cols, cols);
    x.copy_row(r, row);
    Rng rng(derive_seed(config.rng_seed, {r}));
    for (double& v : row) v += laplace_sample(scale, rng);
  }
  return PostWordMatrix::from_dense(rows, cols, std::move(values));
}

TextRelease naive_text_anonymize(std::span<const std::string> raw_posts, const text::WordSet& names) {
  std::vector<text::TokenList> tokens;
  tokens.reserve(raw_posts.size());
  for (const auto& raw : raw_posts) tokens.push_back(text::strip_pii(raw, names));
  TextRelease out;
  out.vocab = text::build_vocab(tokens);
  out.doc_freq = text::document_frequencies(tokens, out.vocab);
  out.post_word = text::tfidf(tokens, out.vocab);
  return out;
}

AnonymizedDataset assemble_release(const SocialNetwork& network, const StructuralRelease& s) {
  const std::size_t n = network.size();
  if (s.pseudonyms.size() != n || s.graph.node_count() != n) {
    throw Error("structural release does not match the network");
  }
  std::vector<std::uint32_t> by_pseudonym(n);
  std::iota(by_pseudonym.begin(), by_pseudonym.end(), 0u);
  std::sort(by_pseudonym.begin(), by_pseudonym.end(), [&](std::uint32_t a, std::uint32_t b) {
    return s.pseudonyms[a] < s.pseudonyms[b];
  });

  AnonymizedDataset d;
  d.users.reserve(n);
  std::vector<std::string> raws;
  std::vector<std::uint32_t> owner;
  for (std::uint32_t row = 0; row < n; ++row) {
    const std::uint32_t orig = by_pseudonym[row];
    d.users.push_back(s.pseudonyms[orig]);
    for (const Post& p : network.posts[orig]) {
      raws.push_back(p.raw);
      owner.push_back(row);
    }
  }
  for (const auto& [from, to] : s.graph.edges()) {
    d.edges.push_back({s.pseudonyms[from], s.pseudonyms[to]});
  }
  std::sort(d.edges.begin(), d.edges.end());

  auto text = naive_text_anonymize(raws, text::name_dictionary(network));
  d.post_word = std::move(text.post_word);
  d.vocab = std::move(text.vocab);
  d.doc_freq = std::move(text.doc_freq);
  d.user_post = UserPostMatrix(n, std::move(owner));
  return d;
}

void apply_text_method(AnonymizedDataset& dataset, TextMethod method, const DPConfig& config) {
  if (method == TextMethod::naive) return;
  dataset.post_word = dp_anonymize(dataset.post_word, config);
}

}  // namespace hetanon::anon
