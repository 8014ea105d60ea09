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

#include "hetanon/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hetanon/common.hpp"
#include "hetanon/text.hpp"

namespace hetanon::io {

namespace {

constexpr int kFormatVersion = 1;

// Splits a line into whitespace-separated fields and converts them, throwing
// ParseError with the current line number on any mismatch.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Reads the next line; throws at end of input.
  void next(const char* expecting) {
    if (!std::getline(in_, line_)) fail(std::string("unexpected end of file, expected ") + expecting);
    ++number_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    pos_ = 0;
  }

  std::string_view word(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t') ++pos_;
    if (start == pos_) fail(std::string("missing field '") + what + "'");
    return std::string_view(line_).substr(start, pos_ - start);
  }

  void expect(std::string_view keyword) {
    auto w = word(std::string(keyword).c_str());
    if (w != keyword) {
      fail("expected '" + std::string(keyword) + "', found '" + std::string(w) + "'");
    }
  }

  std::uint64_t integer(const char* what) {
    auto w = word(what);
    std::uint64_t value = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
    if (ec != std::errc() || p != w.data() + w.size()) {
      fail(std::string("field '") + what + "' is not a non-negative integer: '" + std::string(w) + "'");
    }
    return value;
  }

  double real(const char* what) {
    auto w = word(what);
    double value = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
    if (ec != std::errc() || p != w.data() + w.size()) {
      fail(std::string("field '") + what + "' is not a real number: '" + std::string(w) + "'");
    }
    return value;
  }

  // Everything after the next single separator space.
  std::string rest() {
    if (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    std::string r = line_.substr(pos_);
    pos_ = line_.size();
    return r;
  }

  void end_of_line() {
    skip_space();
    if (pos_ != line_.size()) fail("trailing characters '" + line_.substr(pos_) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(number_, message); }

 private:
  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  std::istream& in_;
  std::string line_;
  std::size_t number_ = 0;
  std::size_t pos_ = 0;
};

void read_magic(LineReader& r, std::string_view magic) {
  r.next("header");
  r.expect(magic);
  auto version = r.integer("version");
  if (version != kFormatVersion) r.fail("unsupported format version " + std::to_string(version));
  r.end_of_line();
}

std::size_t read_count(LineReader& r, std::string_view keyword) {
  r.next(std::string(keyword).c_str());
  r.expect(keyword);
  auto n = r.integer(std::string(keyword).c_str());
  r.end_of_line();
  return static_cast<std::size_t>(n);
}

void read_end(LineReader& r) {
  r.next("end");
  r.expect("end");
  r.end_of_line();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void check_token(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos) {
    throw Error(std::string(what) + " must be a non-empty token without whitespace: '" + s + "'");
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

void write_dataset(std::ostream& out, const AnonymizedDataset& d) {
  d.validate();
  const auto& x = d.post_word;
  std::size_t entries = 0;
  if (x.is_dense()) {
    entries = x.rows() * x.cols();
  } else {
    for (std::size_t r = 0; r < x.rows(); ++r) entries += x.sparse_row(r).nnz();
  }
  out << "hetanon-dataset " << kFormatVersion << '\n';
  out << "params " << d.params.size() << '\n';
  for (const auto& [k, v] : d.params) {
    check_token(k, "parameter name");
    out << "param " << k << ' ' << v << '\n';
  }
  out << "users " << d.users.size() << '\n';
  out << "posts " << d.post_count() << '\n';
  out << "vocab " << d.vocab.size() << '\n';
  out << "docfreq " << (d.doc_freq.empty() ? 0 : 1) << '\n';
  out << "edges " << d.edges.size() << '\n';
  out << "matrix " << (x.is_dense() ? "dense" : "sparse") << ' ' << entries << '\n';
  for (UserId u : d.users) out << "u " << u.value << '\n';
  for (const Edge& e : d.edges) out << "e " << e.from.value << ' ' << e.to.value << '\n';
  for (std::size_t t = 0; t < d.vocab.size(); ++t) {
    check_token(d.vocab.word(t), "vocabulary word");
    out << "w " << d.vocab.word(t);
    if (!d.doc_freq.empty()) out << ' ' << d.doc_freq[t];
    out << '\n';
  }
  for (std::size_t j = 0; j < d.post_count(); ++j) {
    out << "o " << j << ' ' << d.user_post.owner(j) << '\n';
  }
  if (x.is_dense()) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto row = x.dense_row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << "x " << r << ' ' << c << ' ' << format_real(row[c]) << '\n';
      }
    }
  } else {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const auto& row = x.sparse_row(r);
      for (std::size_t i = 0; i < row.nnz(); ++i) {
        out << "x " << r << ' ' << row.indices()[i] << ' ' << format_real(row.values()[i]) << '\n';
      }
    }
  }
  out << "end\n";
}

AnonymizedDataset read_dataset(std::istream& in) {
  LineReader r(in);
  read_magic(r, "hetanon-dataset");
  AnonymizedDataset d;
  const std::size_t n_params = read_count(r, "params");
  for (std::size_t i = 0; i < n_params; ++i) {
    r.next("param");
    r.expect("param");
    std::string key(r.word("name"));
    d.params[key] = r.rest();
  }
  const std::size_t n_users = read_count(r, "users");
  const std::size_t n_posts = read_count(r, "posts");
  const std::size_t n_vocab = read_count(r, "vocab");
  const std::size_t has_df = read_count(r, "docfreq");
  const std::size_t n_edges = read_count(r, "edges");
  r.next("matrix");
  r.expect("matrix");
  const auto kind = std::string(r.word("storage"));
  if (kind != "dense" && kind != "sparse") r.fail("matrix storage must be dense or sparse");
  const bool dense = kind == "dense";
  const std::size_t entries = static_cast<std::size_t>(r.integer("entries"));
  r.end_of_line();
  if (dense && entries != n_posts * n_vocab) r.fail("dense matrix entry count mismatch");

  d.users.reserve(n_users);
  for (std::size_t i = 0; i < n_users; ++i) {
    r.next("user");
    r.expect("u");
    d.users.push_back(UserId{r.integer("id")});
    r.end_of_line();
  }
  d.edges.reserve(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    r.next("edge");
    r.expect("e");
    UserId from{r.integer("from")};
    UserId to{r.integer("to")};
    r.end_of_line();
    d.edges.push_back({from, to});
  }
  std::vector<std::string> words;
  words.reserve(n_vocab);
  for (std::size_t i = 0; i < n_vocab; ++i) {
    r.next("word");
    r.expect("w");
    words.emplace_back(r.word("word"));
    if (has_df) d.doc_freq.push_back(static_cast<std::uint32_t>(r.integer("doc_freq")));
    r.end_of_line();
  }
  try {
    d.vocab = Vocabulary(std::move(words));
  } catch (const Error& e) {
    r.fail(e.what());
  }
  std::vector<std::uint32_t> owner(n_posts);
  for (std::size_t j = 0; j < n_posts; ++j) {
    r.next("post owner");
    r.expect("o");
    if (r.integer("post") != j) r.fail("post owners must be listed in column order");
    auto o = r.integer("owner");
    if (o >= n_users) r.fail("post owner out of range");
    owner[j] = static_cast<std::uint32_t>(o);
    r.end_of_line();
  }
  d.user_post = UserPostMatrix(n_users, std::move(owner));

  std::vector<double> dense_values;
  std::vector<std::vector<std::uint32_t>> idx(dense ? 0 : n_posts);
  std::vector<std::vector<double>> vals(dense ? 0 : n_posts);
  if (dense) dense_values.reserve(entries);
  for (std::size_t i = 0; i < entries; ++i) {
    r.next("matrix entry");
    r.expect("x");
    auto row = r.integer("row");
    auto col = r.integer("col");
    double v = r.real("value");
    r.end_of_line();
    if (row >= n_posts || col >= n_vocab) r.fail("matrix entry out of range");
    if (dense) {
      if (row * n_vocab + col != i) r.fail("dense entries must be listed in row-major order");
      dense_values.push_back(v);
    } else {
      if (!idx[row].empty() && idx[row].back() >= col) r.fail("sparse columns must ascend within a row");
      idx[row].push_back(static_cast<std::uint32_t>(col));
      vals[row].push_back(v);
    }
  }
  read_end(r);
  if (dense) {
    d.post_word = PostWordMatrix::from_dense(n_posts, n_vocab, std::move(dense_values));
  } else {
    std::vector<SparseVector> rows;
    rows.reserve(n_posts);
    for (std::size_t j = 0; j < n_posts; ++j) rows.emplace_back(std::move(idx[j]), std::move(vals[j]));
    d.post_word = PostWordMatrix::from_sparse(n_vocab, std::move(rows));
  }
  try {
    d.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(std::string("invalid dataset: ") + e.what());
  }
  return d;
}

void save_dataset(const AnonymizedDataset& d, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_dataset(out, d);
  finish(out, path);
}

AnonymizedDataset load_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dataset(in);
}

void write_network(std::ostream& out, const SocialNetwork& n) {
  n.validate();
  out << "hetanon-network " << kFormatVersion << '\n';
  out << "users " << n.size() << '\n';
  out << "edges " << n.edges.size() << '\n';
  out << "posts " << n.post_count() << '\n';
  for (std::size_t i = 0; i < n.size(); ++i) {
    check_token(n.handles[i], "handle");
    out << "u " << n.users[i].value << ' ' << n.handles[i] << '\n';
  }
  for (const Edge& e : n.edges) out << "e " << e.from.value << ' ' << e.to.value << '\n';
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (const Post& p : n.posts[i]) {
      if (p.raw.find_first_of("\r\n") != std::string::npos) throw Error("post text contains a newline");
      out << "p " << p.author.value << ' ' << p.raw << '\n';
    }
  }
  out << "end\n";
}

SocialNetwork read_network(std::istream& in) {
  LineReader r(in);
  read_magic(r, "hetanon-network");
  const std::size_t n_users = read_count(r, "users");
  const std::size_t n_edges = read_count(r, "edges");
  const std::size_t n_posts = read_count(r, "posts");
  SocialNetwork n;
  n.users.reserve(n_users);
  for (std::size_t i = 0; i < n_users; ++i) {
    r.next("user");
    r.expect("u");
    n.users.push_back(UserId{r.integer("id")});
    n.handles.emplace_back(r.word("handle"));
    r.end_of_line();
    if (i > 0 && !(n.users[i - 1] < n.users[i])) r.fail("users must be listed in ascending order");
  }
  n.posts.resize(n_users);
  for (std::size_t i = 0; i < n_edges; ++i) {
    r.next("edge");
    r.expect("e");
    UserId from{r.integer("from")};
    UserId to{r.integer("to")};
    r.end_of_line();
    n.edges.push_back({from, to});
  }
  const auto names = text::name_dictionary(n);
  for (std::size_t i = 0; i < n_posts; ++i) {
    r.next("post");
    r.expect("p");
    UserId author{r.integer("author")};
    auto idx = n.find(author);
    if (!idx) r.fail("post by unknown user " + std::to_string(author.value));
    Post p;
    p.author = author;
    p.raw = r.rest();
    p.tokens = text::strip_pii(p.raw, names);
    n.posts[*idx].push_back(std::move(p));
  }
  read_end(r);
  try {
    n.validate();
  } catch (const Error& e) {
    r.fail(std::string("invalid network: ") + e.what());
  }
  return n;
}

void save_network(const SocialNetwork& n, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_network(out, n);
  finish(out, path);
}

SocialNetwork load_network(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_network(in);
}

void write_truth(std::ostream& out, const GroundTruth& t) {
  out << "hetanon-truth " << kFormatVersion << '\n';
  out << "pairs " << t.size() << '\n';
  for (const auto& [p, u] : t.pairs()) out << "m " << p.value << ' ' << u.value << '\n';
  out << "end\n";
}

GroundTruth read_truth(std::istream& in) {
  LineReader r(in);
  read_magic(r, "hetanon-truth");
  const std::size_t n = read_count(r, "pairs");
  std::vector<std::pair<UserId, UserId>> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.next("mapping");
    r.expect("m");
    UserId p{r.integer("pseudonym")};
    UserId u{r.integer("true_id")};
    r.end_of_line();
    pairs.emplace_back(p, u);
  }
  read_end(r);
  try {
    return GroundTruth(std::move(pairs));
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

void save_truth(const GroundTruth& t, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_truth(out, t);
  finish(out, path);
}

GroundTruth load_truth(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_truth(in);
}

void save_topics(const std::vector<std::pair<UserId, std::uint32_t>>& topics,
                 const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "hetanon-topics " << kFormatVersion << '\n';
  out << "users " << topics.size() << '\n';
  for (const auto& [u, t] : topics) out << "t " << u.value << ' ' << t << '\n';
  out << "end\n";
  finish(out, path);
}

std::vector<std::pair<UserId, std::uint32_t>> load_topics(const std::filesystem::path& path) {
  auto in = open_in(path);
  LineReader r(in);
  read_magic(r, "hetanon-topics");
  const std::size_t n = read_count(r, "users");
  std::vector<std::pair<UserId, std::uint32_t>> topics;
  for (std::size_t i = 0; i < n; ++i) {
    r.next("topic");
    r.expect("t");
    UserId u{r.integer("user")};
    auto t = static_cast<std::uint32_t>(r.integer("topic"));
    r.end_of_line();
    topics.emplace_back(u, t);
  }
  read_end(r);
  return topics;
}

std::filesystem::path truth_path(const std::filesystem::path& dataset) {
  return std::filesystem::path(dataset.string() + ".truth");
}

std::filesystem::path topics_path(const std::filesystem::path& network) {
  return std::filesystem::path(network.string() + ".topics");
}

}  // namespace hetanon::io
